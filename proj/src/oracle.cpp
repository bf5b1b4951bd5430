#include "pcsamp/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include <omp.h>

namespace pcsamp {

int max_threads() { return omp_get_max_threads(); }

namespace {

std::vector<Rational> merged_breakpoints(const PiecewiseFunction& a, const PiecewiseFunction& b) {
    std::vector<Rational> xs;
    xs.reserve(a.breakpoints().size() + b.breakpoints().size());
    std::merge(a.breakpoints().begin(), a.breakpoints().end(), b.breakpoints().begin(), b.breakpoints().end(),
               std::back_inserter(xs));
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

template <typename Integrand>
Rational integrate_difference(const std::vector<Rational>& xs, const PiecewiseFunction& a,
                              const PiecewiseFunction& b, Integrand&& f) {
    Rational total(0);
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        const Rational diff = a(xs[k]) - b(xs[k]);
        if (diff.sign() != 0) total += f(diff) * (xs[k + 1] - xs[k]);
    }
    return total;
}

Rational squared(const Rational& d) { return d * d; }
Rational magnitude(const Rational& d) { return d.abs(); }


/// Groups of discontinuities that must be placed jointly.
std::vector<std::vector<int>> coupled_groups(const FeasibleBox& box, bool single_group) {
    const int m = box.m();
    std::vector<int> parent(static_cast<std::size_t>(m + 1));
    std::iota(parent.begin(), parent.end(), 0);
    const std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    const auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

    for (const auto& s : box.spacing) {
        if (s.left == box.l || s.right == box.l || s.left < 0 || s.right > m || s.left >= s.right)
            throw std::invalid_argument("spacing constraints must join two free discontinuities in order");
        unite(s.left, s.right);
    }
    for (int i = 0; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) {
            if (i == box.l || j == box.l) continue;
            const auto& a = box.intervals[i];
            const auto& b = box.intervals[j];
            if (single_group || (a.lo < b.hi && b.lo < a.hi)) unite(i, j);
        }

    std::vector<std::vector<int>> groups;
    std::vector<int> slot(static_cast<std::size_t>(m + 1), -1);
    for (int i = 0; i <= m; ++i) {
        if (i == box.l) continue;
        int& s = slot[find(i)];
        if (s < 0) {
            s = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[s].push_back(i);
    }
    return groups;
}

/// All grid placements of one group, flattened; positions are numerators
/// over `grid`.
std::vector<long> enumerate_group(const FeasibleBox& box, const std::vector<int>& members, long grid,
                                  std::size_t max_tuples) {
    const std::size_t width = members.size();
    std::vector<long> flat;
    std::vector<long> current;
    current.reserve(width);
    std::size_t count = 0;

    std::function<void(std::size_t)> place = [&](std::size_t pos) {
        if (pos == width) {
            if (++count > max_tuples)
                throw std::length_error("placement search exceeds " + std::to_string(max_tuples) +
                                        " tuples; lower the grid resolution");
            flat.insert(flat.end(), current.begin(), current.end());
            return;
        }
        const int k = members[pos];
        long lo = box.intervals[k].lo * grid;
        long hi = box.intervals[k].hi * grid;
        if (pos > 0) lo = std::max(lo, current.back());
        for (const auto& s : box.spacing) {
            if (s.right != k) continue;
            const auto it = std::find(members.begin(), members.begin() + static_cast<long>(pos), s.left);
            if (it == members.begin() + static_cast<long>(pos)) continue;
            const long left = current[static_cast<std::size_t>(it - members.begin())];
            lo = std::max(lo, left + s.min_gap * grid);
            hi = std::min(hi, left + s.max_gap * grid);
        }
        for (long x = lo; x <= hi; ++x) {
            current.push_back(x);
            place(pos + 1);
            current.pop_back();
        }
    };
    place(0);
    if (count == 0) {
        std::string ids;
        for (int k : members) ids += (ids.empty() ? "" : ",") + std::to_string(k);
        throw EmptyFeasibleSet("no placement of discontinuities {" + ids + "} satisfies the spacing constraints");
    }
    return flat;
}

struct Extremes {
    Rational max;
    std::size_t argmax = 0;
    Rational min;
    std::size_t argmin = 0;
    bool set = false;

    void offer(const Rational& v, std::size_t idx) {
        if (!set) {
            max = min = v;
            argmax = argmin = idx;
            set = true;
            return;
        }
        if (v > max || (v == max && idx < argmax)) {
            max = v;
            argmax = idx;
        }
        if (v < min || (v == min && idx < argmin)) {
            min = v;
            argmin = idx;
        }
    }

    void merge(const Extremes& o) {
        if (!o.set) return;
        offer(o.max, o.argmax);
        offer(o.min, o.argmin);
    }
};

struct GroupSearch {
    const Estimate& est;
    const Levels& levels;
    ErrorMetric metric;
    long grid;

    std::vector<Rational> placement(const std::vector<Rational>& base, const std::vector<int>& members,
                                    const std::vector<long>& flat, std::size_t t) const {
        auto D = base;
        for (std::size_t k = 0; k < members.size(); ++k)
            D[members[k]] = Rational(flat[t * members.size() + k], grid);
        return D;
    }

    Rational error_at(const std::vector<Rational>& D) const {
        const auto truth = signal_from_positions(levels, D);
        return metric == ErrorMetric::Energy ? energy_between(truth, est.fn()) : absolute_error_between(truth, est.fn());
    }

    /// Only the span of the group's intervals changes while the group moves,
    /// so the search integrates over that window alone, walking the unit
    /// cells of the estimate and the positions inside each. The full-line
    /// integral above cross-checks the result at the witnesses.
    Rational window_error(const std::vector<Rational>& D, long lo, long hi) const {
        const auto positions = sorted(D);
        std::size_t below = 0;  // positions <= current point
        Rational total(0);
        for (long a = lo; a < hi; ++a) {
            const Rational left(a);
            const Rational right(a + 1);
            const Rational e = a >= est.lo() && a < est.hi() ? est.cells()[static_cast<std::size_t>(a - est.lo())].value
                                                             : Rational(0);
            Rational x = left;
            while (below < positions.size() && positions[below] <= x) ++below;
            while (x < right) {
                const Rational next = below < positions.size() && positions[below] < right ? positions[below] : right;
                const Rational diff = levels[static_cast<int>(below)] - e;
                if (diff.sign() != 0) total += (metric == ErrorMetric::Energy ? diff * diff : diff.abs()) * (next - x);
                x = next;
                while (below < positions.size() && positions[below] <= x) ++below;
            }
        }
        return total;
    }

    static std::vector<Rational> sorted(std::vector<Rational> D) {
        if (!std::is_sorted(D.begin(), D.end()))
            throw std::invalid_argument("discontinuity positions out of order");
        return D;
    }

    Extremes serial(const std::vector<Rational>& base, const std::vector<int>& members,
                    const std::vector<long>& flat, long lo, long hi) const {
        const std::size_t n = flat.size() / members.size();
        Extremes ex;
        for (std::size_t t = 0; t < n; ++t) ex.offer(window_error(placement(base, members, flat, t), lo, hi), t);
        return ex;
    }

    Extremes parallel(const std::vector<Rational>& base, const std::vector<int>& members,
                      const std::vector<long>& flat, long lo, long hi) const {
        const auto n = static_cast<long>(flat.size() / members.size());
        Extremes result;
#pragma omp parallel
        {
            Extremes local;
#pragma omp for schedule(dynamic, 16) nowait
            for (long t = 0; t < n; ++t) {
                const auto idx = static_cast<std::size_t>(t);
                local.offer(window_error(placement(base, members, flat, idx), lo, hi), idx);
            }
#pragma omp critical(pcsamp_extremes_merge)
            result.merge(local);
        }
        return result;
    }
};

constexpr std::size_t kParallelMinTuples = 512;

/// Enumerated placements of every coupled group, reusable across estimates
/// that share the feasible box.
class PlacementSearch {
public:
    PlacementSearch(const Levels& levels, const FeasibleBox& box, long grid, ErrorMetric metric,
                    std::size_t max_tuples, bool single_group)
        : levels_(levels), grid_(grid), metric_(metric) {
        if (grid < 1) throw std::invalid_argument("grid resolution must be at least 1 point per unit");
        if (box.m() != levels.m()) throw std::invalid_argument("feasible box and levels disagree on m");
        groups_ = coupled_groups(box, single_group);
        for (const auto& g : groups_) {
            placements_.push_back(enumerate_group(box, g, grid, max_tuples));
            long lo = box.intervals[g.front()].lo;
            long hi = box.intervals[g.front()].hi;
            for (int k : g) {
                lo = std::min(lo, box.intervals[k].lo);
                hi = std::max(hi, box.intervals[k].hi);
            }
            windows_.emplace_back(lo, hi);
        }
        // Reference placement: the first tuple of every group; D_l stays at 0.
        base_.assign(static_cast<std::size_t>(box.m() + 1), Rational(0));
        for (std::size_t g = 0; g < groups_.size(); ++g)
            for (std::size_t k = 0; k < groups_[g].size(); ++k)
                base_[groups_[g][k]] = Rational(placements_[g][k], grid);
    }

    struct GroupResult {
        Rational up;    ///< group max minus the window error at the base placement
        Rational down;  ///< same for the min
        std::size_t argmax = 0;
        std::size_t argmin = 0;
    };

    /// Worst case of `est`. With `previous` (results for an estimate that
    /// differs only on cell `changed`), groups whose window misses that cell
    /// are reused instead of searched again.
    WorstCase run(const Estimate& est, Execution exec, std::vector<GroupResult>& results,
                  const std::vector<GroupResult>* previous = nullptr, long changed = 0) const {
        const GroupSearch searcher{est, levels_, metric_, grid_};
        const Rational base_error = searcher.error_at(base_);
        results.assign(groups_.size(), GroupResult{});

        WorstCase wc;
        wc.max = base_error;
        wc.min = base_error;
        wc.witness = base_;
        wc.min_witness = base_;
        for (std::size_t g = 0; g < groups_.size(); ++g) {
            const auto& members = groups_[g];
            const auto& flat = placements_[g];
            const auto [lo, hi] = windows_[g];
            if (previous && (changed < lo || changed >= hi)) {
                results[g] = (*previous)[g];
            } else {
                const Rational base_window = searcher.window_error(base_, lo, hi);
                // Thread start-up costs more than a few hundred evaluations.
                const bool serial = exec == Execution::Serial || flat.size() / members.size() < kParallelMinTuples;
                const Extremes ex = serial ? searcher.serial(base_, members, flat, lo, hi)
                                           : searcher.parallel(base_, members, flat, lo, hi);
                results[g] = {ex.max - base_window, ex.min - base_window, ex.argmax, ex.argmin};
                wc.evaluations += flat.size() / members.size();
            }
            const auto& r = results[g];
            wc.max += r.up;
            wc.min += r.down;
            for (std::size_t k = 0; k < members.size(); ++k) {
                wc.witness[members[k]] = Rational(flat[r.argmax * members.size() + k], grid_);
                wc.min_witness[members[k]] = Rational(flat[r.argmin * members.size() + k], grid_);
            }
        }

        if (searcher.error_at(wc.witness) != wc.max || searcher.error_at(wc.min_witness) != wc.min)
            throw std::logic_error("worst-case search: error does not split over independent groups");
        return wc;
    }

private:
    const Levels& levels_;
    long grid_;
    ErrorMetric metric_;
    std::vector<std::vector<int>> groups_;
    std::vector<std::vector<long>> placements_;
    std::vector<std::pair<long, long>> windows_;
    std::vector<Rational> base_;
};

WorstCase search(const Estimate& est, const Levels& levels, const FeasibleBox& box, long grid, Execution exec,
                 ErrorMetric metric, std::size_t max_tuples, bool single_group) {
    std::vector<PlacementSearch::GroupResult> results;
    return PlacementSearch(levels, box, grid, metric, max_tuples, single_group).run(est, exec, results);
}

}  // namespace

Rational energy_between(const PiecewiseFunction& a, const PiecewiseFunction& b) {
    return integrate_difference(merged_breakpoints(a, b), a, b, squared);
}

Rational absolute_error_between(const PiecewiseFunction& a, const PiecewiseFunction& b) {
    return integrate_difference(merged_breakpoints(a, b), a, b, magnitude);
}

FeasibleBox independent_box(const UncertaintyModel& model) {
    FeasibleBox box;
    box.l = model.l;
    box.intervals = model.G;
    box.intervals[model.l] = {0, 0};
    return box;
}

FeasibleBox feasible_box(const UncertaintyModel& model, const ObservationSet& obs) {
    FeasibleBox box = independent_box(model);
    for (int j = 1; j <= model.m(); ++j)
        if (model.in_U[j - 1] && model.in_U[j] && obs.unit_region(j)) box.spacing.push_back({j - 1, j, 1, 2});
    return box;
}

WorstCase worst_case_energy(const Estimate& est, const Levels& levels, const FeasibleBox& box, long grid,
                            Execution exec, ErrorMetric metric, std::size_t max_tuples) {
    return search(est, levels, box, grid, exec, metric, max_tuples, false);
}

WorstCase joint_worst_case_energy(const Estimate& est, const Levels& levels, const FeasibleBox& box, long grid,
                                  Execution exec, ErrorMetric metric, std::size_t max_tuples) {
    return search(est, levels, box, grid, exec, metric, max_tuples, true);
}

std::optional<Rational> PerturbationReport::min_margin() const {
    std::optional<Rational> margin;
    for (const auto& e : entries) {
        if (e.delta.sign() == 0) continue;
        Rational d = e.worst - base.max;
        if (!margin || d < *margin) margin = std::move(d);
    }
    return margin;
}

PerturbationReport perturbation_minimax_check(const Estimate& est, const Levels& levels, const FeasibleBox& box,
                                              const std::vector<Rational>& deltas, long grid,
                                              const std::vector<long>& cells, Execution exec,
                                              std::size_t max_tuples) {
    const PlacementSearch searcher(levels, box, grid, ErrorMetric::Energy, max_tuples, false);
    std::vector<PlacementSearch::GroupResult> base_groups;
    std::vector<PlacementSearch::GroupResult> scratch;
    PerturbationReport report;
    report.base = searcher.run(est, exec, base_groups);

    std::vector<long> probe = cells;
    if (probe.empty())
        for (const auto& c : est.cells()) probe.push_back(c.lo);

    const auto gamma = est.gamma();
    for (long lo : probe) {
        if (lo < est.lo() || lo >= est.hi())
            throw std::out_of_range("perturbation cell " + std::to_string(lo) + " outside the estimate");
        const auto k = static_cast<std::size_t>(lo - est.lo());
        for (const auto& delta : deltas) {
            auto shifted = gamma;
            shifted[k] += delta;
            const auto wc = searcher.run(est.with_gamma(shifted), exec, scratch, &base_groups, lo);
            PerturbationEntry entry{lo, delta, wc.max, wc.witness};
            if (wc.max < report.base.max)
                report.violations.push_back(entry);
            else if (delta.sign() != 0 && wc.max == report.base.max)
                report.ties.push_back(entry);
            report.entries.push_back(std::move(entry));
        }
    }
    return report;
}

}  // namespace pcsamp
