#include "penwcf/core.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace penwcf {

double l1_norm(const Move& m) {
    double s = 0.0;
    for (const auto& [k, w] : m.points()) s += std::abs(w);
    return s;
}

double total_weight(const Move& m) {
    double s = 0.0;
    for (const auto& [k, w] : m.points()) s += w;
    return s;
}

Move transpose(const Move& m) {
    Move t;
    for (const auto& [k, w] : m.points()) t.add(k.second, k.first, w);
    return t;
}

std::pair<Configuration, Configuration> split_signs(const Move& m) {
    Configuration pos, neg;
    for (const auto& [k, w] : m.points()) {
        if (w > 0.0)
            pos.add(k.first, k.second, w);
        else if (w < 0.0)
            neg.add(k.first, k.second, -w);
    }
    return {pos, neg};
}

double min_coordinate(const Move& m) {
    if (m.empty()) throw std::domain_error("min_coordinate: empty support");
    double v = std::numeric_limits<double>::infinity();
    for (const auto& [k, w] : m.points()) v = std::min(v, std::max(k.first, k.second));
    return v;
}

double max_coordinate(const Move& m) {
    if (m.empty()) throw std::domain_error("max_coordinate: empty support");
    double v = 0.0;
    for (const auto& [k, w] : m.points()) v = std::max(v, std::max(k.first, k.second));
    return v;
}

double min_plain_coordinate(const Move& m) {
    if (m.empty()) throw std::domain_error("min_plain_coordinate: empty support");
    double v = std::numeric_limits<double>::infinity();
    for (const auto& [k, w] : m.points()) v = std::min(v, std::min(k.first, k.second));
    return v;
}

std::size_t support_count(const Move& m) {
    Move c = m;
    c.canonicalize();
    return c.size();
}

std::size_t support_count_union(const Move& a, const Move& b) {
    std::set<Move::Key> keys;
    Move ca = a, cb = b;
    ca.canonicalize();
    cb.canonicalize();
    for (const auto& [k, w] : ca.points()) keys.insert(k);
    for (const auto& [k, w] : cb.points()) keys.insert(k);
    return keys.size();
}

}  // namespace penwcf
