#include "pcsamp/inference.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pcsamp {

namespace {

void check_spread(const std::set<long>& values, const std::string& where) {
    if (values.size() > 2 || (values.size() == 2 && *values.rbegin() - *values.begin() != 1)) {
        std::string list;
        for (long v : values) list += (list.empty() ? "" : ",") + std::to_string(v);
        throw InconsistentObservations("cumulative count " + where + " takes values {" + list +
                                       "}; at most two consecutive values are possible");
    }
}

}  // namespace

ObservationSet::ObservationSet(std::vector<SamplingPattern> patterns, Levels levels)
    : patterns_(std::move(patterns)), levels_(std::move(levels)) {
    if (patterns_.empty()) throw std::invalid_argument("observation set is empty");
    const int m = levels_.m();
    for (const auto& p : patterns_) {
        if (p.m() != m)
            throw std::invalid_argument("pattern " + p.str() + " has length " + std::to_string(p.m()) +
                                        ", expected " + std::to_string(m));
        for (int v : p.eta)
            if (v < 1) throw std::invalid_argument("pattern " + p.str() + " has a non-positive count");
    }
    std::sort(patterns_.begin(), patterns_.end());
    patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());

    for (int a = 1; a <= m; ++a)
        for (int b = a; b <= m; ++b) {
            std::set<long> sums;
            for (const auto& p : patterns_) sums.insert(p.sum(a, b));
            check_spread(sums, "over regions " + std::to_string(a) + ".." + std::to_string(b));
        }
}

bool ObservationSet::unit_region(int i) const {
    return std::all_of(patterns_.begin(), patterns_.end(), [i](const SamplingPattern& p) { return p[i] == 1; });
}

ObservationSet ObservationSet::reversed() const {
    std::vector<SamplingPattern> rev;
    rev.reserve(patterns_.size());
    for (const auto& p : patterns_) rev.push_back({std::vector<int>(p.eta.rbegin(), p.eta.rend())});
    return {std::move(rev), levels_.reversed()};
}

std::vector<int> UncertaintyModel::U() const {
    std::vector<int> out;
    for (int i = 0; i <= m(); ++i)
        if (in_U[i]) out.push_back(i);
    return out;
}

std::vector<int> UncertaintyModel::Ucomp() const {
    std::vector<int> out;
    for (int i = 0; i <= m(); ++i)
        if (i != l && !in_U[i]) out.push_back(i);
    return out;
}

bool UncertaintyModel::is_V(int i) const {
    return std::binary_search(chains.V.begin(), chains.V.end(), i);
}

std::set<long> cumulative_values(const ObservationSet& obs, int l, int i) {
    const int m = obs.m();
    if (l < 0 || l > m || i < 0 || i > m || i == l)
        throw std::out_of_range("cumulative_values: need distinct indices in [0, m]");
    std::set<long> values;
    for (const auto& p : obs.patterns()) values.insert(i < l ? p.sum(i + 1, l) : p.sum(l + 1, i));
    check_spread(values, "between discontinuities " + std::to_string(std::min(i, l)) + " and " +
                             std::to_string(std::max(i, l)));
    return values;
}

UncertaintyModel infer_model(const ObservationSet& obs, int l) {
    const int m = obs.m();
    if (l < 0 || l > m) throw std::out_of_range("reference index " + std::to_string(l) + " outside [0, m]");
    UncertaintyModel model;
    model.l = l;
    model.C.assign(static_cast<std::size_t>(m + 1), 0);
    model.in_U.assign(static_cast<std::size_t>(m + 1), false);
    model.G.assign(static_cast<std::size_t>(m + 1), GridInterval{});

    for (int i = 0; i <= m; ++i) {
        if (i == l) continue;
        const auto values = cumulative_values(obs, l, i);
        const long c = *values.rbegin();
        model.C[i] = c;
        // Two values {c-1, c}: the distance lies in (c-1, c). One value s: the
        // distance lies in (s-1, s+1).
        const bool pinned = values.size() == 2;
        model.in_U[i] = !pinned;
        const long near = c - 1;
        const long far = pinned ? c : c + 1;
        model.G[i] = i > l ? GridInterval{near, far} : GridInterval{-far, -near};
    }
    model.chains = chain_analysis(obs, model, l);
    return model;
}

ChainStructure chain_analysis(const ObservationSet& obs, const UncertaintyModel& partial, int l) {
    const int m = obs.m();
    const auto& in_U = partial.in_U;
    const auto& G = partial.G;
    ChainStructure cs;

    // Increasing chains: anchor t right of l, the region ending at t shows
    // more than one sample somewhere, the region after it always shows one.
    for (int t = l + 1; t + 1 <= m; ++t) {
        if (!in_U[t] || !in_U[t + 1] || obs.unit_region(t) || !obs.unit_region(t + 1)) continue;
        int lambda = 1;
        while (t + lambda < m && obs.unit_region(t + lambda + 1)) ++lambda;
        Chain c{t, lambda, 0, true};
        for (int k = c.first(); k <= c.last(); ++k)
            if (!in_U[k]) throw std::logic_error("chain member " + std::to_string(k) + " is not in U");
        c.B = G[c.last()].hi - G[c.first()].lo - 1;
        cs.plus.push_back(c);
    }

    // Decreasing chains mirror the increasing ones: anchor t left of l, the
    // region right of t shows more than one sample somewhere, region t always
    // shows one.
    for (int t = l - 1; t - 1 >= 0; --t) {
        if (!in_U[t] || !in_U[t - 1] || obs.unit_region(t + 1) || !obs.unit_region(t)) continue;
        int lambda = 1;
        while (t + 1 - lambda > 1 && obs.unit_region(t - lambda)) ++lambda;
        Chain c{t, lambda, 0, false};
        for (int k = c.first(); k <= c.last(); ++k)
            if (!in_U[k]) throw std::logic_error("chain member " + std::to_string(k) + " is not in U");
        c.B = G[c.last()].hi - G[c.first()].lo - 1;
        cs.minus.push_back(c);
    }

    std::vector<bool> chained(static_cast<std::size_t>(m + 1), false);
    for (const auto* group : {&cs.plus, &cs.minus})
        for (const auto& c : *group)
            for (int k = c.first(); k <= c.last(); ++k) chained[k] = true;
    for (int i = 0; i <= m; ++i)
        if (in_U[i] && !chained[i]) cs.V.push_back(i);
    return cs;
}

}  // namespace pcsamp
