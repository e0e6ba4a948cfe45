#include "thetapress/set_cover.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "thetapress/errors.hpp"

namespace thetapress {

std::string_view to_string(SolveStatus s)
{
    return s == SolveStatus::exact ? "exact" : "greedy";
}

std::string_view to_string(SolverKind s)
{
    switch (s) {
    case SolverKind::exact:
        return "exact";
    case SolverKind::greedy:
        return "greedy";
    case SolverKind::automatic:
        return "auto";
    }
    return "auto";
}

SolverKind parse_solver(std::string_view text)
{
    if (text == "exact") {
        return SolverKind::exact;
    }
    if (text == "greedy") {
        return SolverKind::greedy;
    }
    if (text == "auto" || text == "automatic") {
        return SolverKind::automatic;
    }
    throw ConfigError("unknown solver '" + std::string(text) + "' (expected exact|greedy|auto)");
}

SolveStatus pick_solver(SolverKind solver, std::size_t universe_size, std::size_t candidate_count)
{
    switch (solver) {
    case SolverKind::exact:
        return SolveStatus::exact;
    case SolverKind::greedy:
        return SolveStatus::greedy;
    case SolverKind::automatic:
        break;
    }
    return universe_size <= exact_universe_limit && candidate_count <= exact_candidate_limit ? SolveStatus::exact
                                                                                             : SolveStatus::greedy;
}

namespace {

// Uniform mask operations so the search below works for one machine word or a PointSet.
inline std::size_t popcount(std::uint64_t m) { return static_cast<std::size_t>(std::popcount(m)); }
inline std::size_t popcount(const PointSet& m) { return m.count(); }
inline bool none(std::uint64_t m) { return m == 0; }
inline bool none(const PointSet& m) { return m.empty(); }
inline std::uint64_t and_not(std::uint64_t a, std::uint64_t b) { return a & ~b; }
inline PointSet and_not(const PointSet& a, const PointSet& b)
{
    PointSet out = a;
    for (auto e : b.elements()) {
        out.erase(e);
    }
    return out;
}
inline bool has(std::uint64_t m, std::size_t i) { return (m >> i) & 1U; }
inline bool has(const PointSet& m, std::size_t i) { return m.contains(i); }

double ascending_sum(std::vector<double> values)
{
    std::sort(values.begin(), values.end());
    double s = 0.0;
    for (auto v : values) {
        s += v;
    }
    return s;
}

template <class Mask>
struct CoverSearch {
    std::size_t u = 0;
    Mask full;
    std::vector<Mask> masks;
    std::vector<double> w;
    std::vector<std::vector<std::size_t>> by_element;

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_choice;
    std::vector<std::size_t> stack;
    std::unordered_map<std::uint64_t, double> memo;

    std::vector<std::size_t> greedy() const
    {
        std::vector<std::size_t> chosen;
        Mask covered{};
        if constexpr (!std::is_same_v<Mask, std::uint64_t>) {
            covered = Mask(u);
        }
        while (!none(and_not(full, covered))) {
            auto uncovered = and_not(full, covered);
            double best_ratio = std::numeric_limits<double>::infinity();
            std::size_t pick = masks.size();
            for (std::size_t k = 0; k < masks.size(); ++k) {
                auto fresh = popcount(masks[k] & uncovered);
                if (fresh == 0) {
                    continue;
                }
                double ratio = w[k] / static_cast<double>(fresh);
                if (ratio < best_ratio) {
                    best_ratio = ratio;
                    pick = k;
                }
            }
            chosen.push_back(pick);
            covered = covered | masks[pick];
        }
        return chosen;
    }

    double lower_bound(const Mask& uncovered) const
    {
        double lb = 0.0;
        for (std::size_t e = 0; e < u; ++e) {
            if (!has(uncovered, e)) {
                continue;
            }
            double price = std::numeric_limits<double>::infinity();
            for (auto k : by_element[e]) {
                price = std::min(price, w[k] / static_cast<double>(popcount(masks[k] & uncovered)));
            }
            lb += price;
        }
        return lb;
    }

    void search(const Mask& covered, double cost)
    {
        auto uncovered = and_not(full, covered);
        if (none(uncovered)) {
            if (cost < best) {
                best = cost;
                best_choice = stack;
            }
            return;
        }
        if constexpr (std::is_same_v<Mask, std::uint64_t>) {
            auto [it, inserted] = memo.try_emplace(covered, cost);
            if (!inserted) {
                if (it->second <= cost) {
                    return;
                }
                it->second = cost;
            }
        }
        // Rounding in the bound can only overstate it by a few ulps; the relative
        // margin keeps an optimal branch from being cut on a tie.
        if (cost + lower_bound(uncovered) * (1.0 - 1e-12) >= best) {
            return;
        }
        std::size_t pivot = u;
        std::size_t fewest = std::numeric_limits<std::size_t>::max();
        for (std::size_t e = 0; e < u; ++e) {
            if (has(uncovered, e) && by_element[e].size() < fewest) {
                fewest = by_element[e].size();
                pivot = e;
            }
        }
        std::vector<std::pair<double, std::size_t>> order;
        for (auto k : by_element[pivot]) {
            order.emplace_back(w[k] / static_cast<double>(popcount(masks[k] & uncovered)), k);
        }
        std::sort(order.begin(), order.end());
        for (auto [ratio, k] : order) {
            stack.push_back(k);
            search(covered | masks[k], cost + w[k]);
            stack.pop_back();
        }
    }
};

template <class Mask>
std::vector<std::size_t> run_search(std::size_t u, Mask full, std::vector<Mask> masks, std::vector<double> w,
                                    bool exact)
{
    CoverSearch<Mask> s;
    s.u = u;
    s.full = std::move(full);
    s.masks = std::move(masks);
    s.w = std::move(w);
    s.by_element.resize(u);
    for (std::size_t k = 0; k < s.masks.size(); ++k) {
        for (std::size_t e = 0; e < u; ++e) {
            if (has(s.masks[k], e)) {
                s.by_element[e].push_back(k);
            }
        }
    }
    auto initial = s.greedy();
    if (!exact) {
        return initial;
    }
    double g = 0.0;
    for (auto k : initial) {
        g += s.w[k];
    }
    s.best = g;
    s.best_choice = initial;
    Mask start{};
    if constexpr (!std::is_same_v<Mask, std::uint64_t>) {
        start = Mask(u);
    }
    s.search(start, 0.0);
    return s.best_choice;
}

}  // namespace

CoverSolution solve_weighted_cover(const PointSet& universe, std::span<const PointSet> sets,
                                   std::span<const double> weights, SolverKind solver)
{
    CoverSolution out;
    out.status = pick_solver(solver, universe.count(), sets.size());
    auto points = universe.elements();
    const std::size_t u = points.size();
    if (u == 0) {
        return out;
    }

    // Compact every set onto the universe coordinates 0..u-1.
    std::vector<PointSet> compact;
    compact.reserve(sets.size());
    PointSet reach(u);
    for (const auto& s : sets) {
        PointSet c(u);
        for (std::size_t i = 0; i < u; ++i) {
            if (s.contains(points[i])) {
                c.insert(i);
            }
        }
        reach |= c;
        compact.push_back(std::move(c));
    }
    if (reach.count() != u) {
        throw Infeasible("candidate family does not cover the universe (" + std::to_string(reach.count()) + " of " +
                         std::to_string(u) + " points reachable)");
    }

    // Collapse equal masks to their lightest set, then drop dominated sets.
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < compact.size(); ++k) {
        if (!compact[k].empty()) {
            order.push_back(k);
        }
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (compact[a] != compact[b]) {
            return compact[a] < compact[b];
        }
        if (weights[a] != weights[b]) {
            return weights[a] < weights[b];
        }
        return a < b;
    });
    std::vector<std::size_t> distinct;
    for (auto k : order) {
        if (distinct.empty() || compact[distinct.back()] != compact[k]) {
            distinct.push_back(k);
        }
    }
    std::sort(distinct.begin(), distinct.end());
    std::vector<std::size_t> kept;
    for (auto i : distinct) {
        bool dominated = false;
        for (auto j : distinct) {
            if (j != i && weights[j] <= weights[i] && compact[i].is_subset_of(compact[j])) {
                dominated = true;
                break;
            }
        }
        if (!dominated) {
            kept.push_back(i);
        }
    }

    std::vector<double> w;
    w.reserve(kept.size());
    for (auto k : kept) {
        w.push_back(weights[k]);
    }
    const bool exact = out.status == SolveStatus::exact;
    std::vector<std::size_t> local;
    if (u <= 64) {
        std::vector<std::uint64_t> masks;
        for (auto k : kept) {
            masks.push_back(compact[k].words()[0]);
        }
        std::uint64_t full = u == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << u) - 1;
        local = run_search<std::uint64_t>(u, full, std::move(masks), std::move(w), exact);
    } else {
        std::vector<PointSet> masks;
        for (auto k : kept) {
            masks.push_back(compact[k]);
        }
        local = run_search<PointSet>(u, PointSet::full(u), std::move(masks), std::move(w), exact);
    }

    std::vector<double> chosen_w;
    for (auto l : local) {
        out.chosen.push_back(kept[l]);
        chosen_w.push_back(weights[kept[l]]);
    }
    std::sort(out.chosen.begin(), out.chosen.end());
    out.value = ascending_sum(std::move(chosen_w));
    return out;
}

IndependentSet max_weight_independent_set(const std::vector<PointSet>& adjacency, std::span<const double> weights,
                                          SolverKind solver)
{
    const std::size_t n = adjacency.size();
    IndependentSet out;
    out.status = pick_solver(solver, n, n);
    if (n > 64) {
        out.status = SolveStatus::greedy;
    }
    if (n == 0) {
        return out;
    }

    // Heaviest-first greedy, also the incumbent for the exact search.
    std::vector<std::size_t> by_weight(n);
    std::iota(by_weight.begin(), by_weight.end(), std::size_t{0});
    std::stable_sort(by_weight.begin(), by_weight.end(),
                     [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
    std::vector<std::size_t> incumbent;
    {
        PointSet blocked(n);
        for (auto v : by_weight) {
            if (!blocked.contains(v)) {
                incumbent.push_back(v);
                blocked.insert(v);
                blocked |= adjacency[v];
            }
        }
    }
    auto total = [&](const std::vector<std::size_t>& vs) {
        std::vector<double> ws;
        for (auto v : vs) {
            ws.push_back(weights[v]);
        }
        return ascending_sum(std::move(ws));
    };

    if (out.status == SolveStatus::exact) {
        std::vector<std::uint64_t> adj(n, 0);
        for (std::size_t v = 0; v < n; ++v) {
            for (auto u : adjacency[v].elements()) {
                if (u != v) {
                    adj[v] |= std::uint64_t{1} << u;
                }
            }
        }
        double best = total(incumbent);
        std::vector<std::size_t> best_set = incumbent;
        std::vector<std::size_t> current;

        // Clique-partition bound: an independent set takes at most one vertex per clique.
        auto bound = [&](std::uint64_t candidates) {
            double b = 0.0;
            while (candidates != 0) {
                std::uint64_t clique_ok = candidates;
                double heaviest = 0.0;
                while (clique_ok != 0) {
                    auto v = static_cast<std::size_t>(std::countr_zero(clique_ok));
                    clique_ok &= adj[v];
                    candidates &= ~(std::uint64_t{1} << v);
                    heaviest = std::max(heaviest, weights[v]);
                }
                b += heaviest;
            }
            return b;
        };

        auto search = [&](auto&& self, std::uint64_t candidates, double weight) -> void {
            if (candidates == 0) {
                if (weight > best) {
                    best = weight;
                    best_set = current;
                }
                return;
            }
            if (weight + bound(candidates) * (1.0 + 1e-12) <= best) {
                return;
            }
            std::size_t pick = 0;
            double heaviest = -1.0;
            for (auto m = candidates; m != 0; m &= m - 1) {
                auto v = static_cast<std::size_t>(std::countr_zero(m));
                if (weights[v] > heaviest) {
                    heaviest = weights[v];
                    pick = v;
                }
            }
            auto bit = std::uint64_t{1} << pick;
            current.push_back(pick);
            self(self, candidates & ~adj[pick] & ~bit, weight + weights[pick]);
            current.pop_back();
            self(self, candidates & ~bit, weight);
        };
        std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
        search(search, all, 0.0);
        incumbent = best_set;
    }
    std::sort(incumbent.begin(), incumbent.end());
    out.chosen = incumbent;
    out.value = total(incumbent);
    return out;
}

}  // namespace thetapress
