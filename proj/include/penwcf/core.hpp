#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace penwcf {

// One weighted point of a configuration or move. Weights are signed for
// moves and nonnegative for configurations.
struct PointMass {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
};

// Relative weight threshold below which entries are dropped in canonical form.
inline constexpr double kZeroTolerance = 1e-15;

// Finitely supported signed function on the nonnegative quadrant.
// Coordinates are compared exactly (the search grid is an explicit finite
// set, no epsilon matching).
class Move {
  public:
    using Key = std::pair<double, double>;
    using Map = std::map<Key, double>;

    Move() = default;
    explicit Move(std::vector<PointMass> pts) {
        for (const auto& p : pts) add(p.x, p.y, p.w);
        canonicalize();
    }

    void add(double x, double y, double w) {
        if (x < 0.0 || y < 0.0) throw std::invalid_argument("Move: negative coordinate");
        auto [it, inserted] = pts_.try_emplace({x, y}, w);
        if (!inserted) it->second += w;
    }

    double at(double x, double y) const {
        auto it = pts_.find({x, y});
        return it == pts_.end() ? 0.0 : it->second;
    }

    // Drops entries with |w| below kZeroTolerance relative to max |w|.
    void canonicalize() {
        double wmax = 0.0;
        for (const auto& [k, w] : pts_) wmax = std::max(wmax, std::abs(w));
        const double cut = kZeroTolerance * std::max(1.0, wmax);
        for (auto it = pts_.begin(); it != pts_.end();) {
            if (std::abs(it->second) < cut)
                it = pts_.erase(it);
            else
                ++it;
        }
    }

    const Map& points() const { return pts_; }
    bool empty() const { return pts_.empty(); }
    std::size_t size() const { return pts_.size(); }

    bool nonnegative(double tol = 0.0) const {
        for (const auto& [k, w] : pts_)
            if (w < -tol) return false;
        return true;
    }

    Move& operator+=(const Move& o) {
        for (const auto& [k, w] : o.pts_) add(k.first, k.second, w);
        return *this;
    }
    Move& operator*=(double c) {
        for (auto& [k, w] : pts_) w *= c;
        return *this;
    }
    friend Move operator+(Move a, const Move& b) { a += b; return a; }
    friend Move operator-(Move a, const Move& b) {
        Move nb = b;
        nb *= -1.0;
        a += nb;
        return a;
    }
    friend Move operator*(double c, Move a) { a *= c; return a; }

  private:
    Map pts_;
};

// A configuration is a move with nonnegative weights; callers assert via
// Move::nonnegative where the distinction matters.
using Configuration = Move;

// Unit point mass at (x, y).
inline Move point(double x, double y, double w = 1.0) {
    Move m;
    m.add(x, y, w);
    return m;
}

// Start/end configurations of the symmetric penalised game:
//   start = 1/2 [[L, L+1]] + 1/2 [[L+1, L]],  end = [[L+1/2+eps, L+1/2+eps]].
struct Boundary {
    double lambda = 0.0;
    double epsilon = 0.0;
    Configuration start;
    Configuration end;

    static Boundary symmetric(double lambda, double epsilon) {
        if (lambda < 0.0 || epsilon < 0.0)
            throw std::invalid_argument("Boundary: lambda and epsilon must be >= 0");
        Boundary b;
        b.lambda = lambda;
        b.epsilon = epsilon;
        b.start.add(lambda, lambda + 1.0, 0.5);
        b.start.add(lambda + 1.0, lambda, 0.5);
        b.end.add(lambda + 0.5 + epsilon, lambda + 0.5 + epsilon, 1.0);
        return b;
    }

    double end_coordinate() const { return lambda + 0.5 + epsilon; }
    Move end_minus_start() const { return end - start; }
};

double l1_norm(const Move& m);
double total_weight(const Move& m);
Move transpose(const Move& m);

// m = positive - negative, both nonnegative with disjoint support.
std::pair<Configuration, Configuration> split_signs(const Move& m);

// min over support of max(x, y); throws on empty support.
double min_coordinate(const Move& m);
// max over support of max(x, y); throws on empty support.
double max_coordinate(const Move& m);
// min over support of min(x, y); throws on empty support.
double min_plain_coordinate(const Move& m);

std::size_t support_count(const Move& m);
// |supp(a) u supp(b)|
std::size_t support_count_union(const Move& a, const Move& b);

}  // namespace penwcf
