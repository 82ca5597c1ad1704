#include "igt/matching.hpp"

#include <algorithm>
#include <cmath>
#include <list>
#include <vector>

#include "igt/error.hpp"

namespace igt {

namespace {

constexpr double kEps = 1e-12;

inline bool greater(double a, double b) { return a - b > kEps; }
inline bool less(double a, double b) { return b - a > kEps; }

// Dense minimum-cost perfect matching via Edmonds' blossom algorithm with
// dual variables. Vertices [0, n) are real; [n, 2n) are blossom slots.
// Structure follows the classic dense O(V^3) implementation: a BFS forest
// over EVEN/ODD/UNLABELED supervertices, blossom shrink on even-even edges
// in one tree, augment across trees, and dual updates that keep slacks
// nonnegative.
class BlossomSolver {
public:
    explicit BlossomSolver(const Mat& cost)
        : n(cost.rows),
          outer(2 * n),
          deep(2 * n),
          shallow(2 * n),
          tip(2 * n),
          active(2 * n),
          type(2 * n),
          forest(2 * n),
          root(2 * n),
          blocked(2 * n),
          dual(2 * n),
          slack(n, std::vector<double>(n, 0.0)),
          mate(2 * n),
          visited(2 * n),
          costs(n, std::vector<double>(n, 0.0)) {
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                if (u != v) costs[u][v] = cost(u, v);
    }

    std::vector<std::pair<std::size_t, std::size_t>> solve() {
        clear();
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                if (u != v) slack[u][v] = costs[u][v];
        shift_costs_positive();

        perfect = false;
        std::size_t guard = 0;
        while (!perfect) {
            if (++guard > 100 * n + 1000)
                throw Error("matching: dual update failed to converge");
            heuristic();
            grow();
            update_duals();
            reset();
        }
        return retrieve();
    }

private:
    static constexpr int UNLABELED = 0, ODD = 1, EVEN = 2;

    std::size_t n;
    std::vector<int> outer;
    std::vector<std::list<int>> deep, shallow;
    std::vector<int> tip;
    std::vector<bool> active;
    std::vector<int> type, forest, root;
    std::vector<bool> blocked;
    std::vector<double> dual;
    std::vector<std::vector<double>> slack;
    std::vector<int> mate;
    std::vector<char> visited;
    std::vector<std::vector<double>> costs;
    std::list<int> free_slots;
    std::list<int> forest_list;
    bool perfect = false;

    bool edge_blocked(std::size_t u, std::size_t v) const { return greater(slack[u][v], 0.0); }

    void shift_costs_positive() {
        double min_edge = 0.0;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                if (u != v && greater(min_edge - slack[u][v], 0.0)) min_edge = slack[u][v];
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                if (u != v) slack[u][v] -= min_edge;
    }

    void destroy_blossom(int t) {
        if (t < int(n) || (blocked[t] && greater(dual[t], 0.0))) return;
        for (int s : shallow[t]) {
            outer[s] = s;
            for (int j : deep[s]) outer[j] = s;
            destroy_blossom(s);
        }
        active[t] = false;
        blocked[t] = false;
        free_slots.push_back(t);
        mate[t] = -1;
    }

    void expand(int u, bool expand_blocked = false) {
        int v = outer[mate[u]];
        double min_slack = 0.0;
        bool init = false;
        int p = -1, q = -1;
        for (int di : deep[u])
            for (int dj : deep[v])
                if (!edge_blocked(di, dj) && (!init || less(slack[di][dj], min_slack))) {
                    min_slack = slack[di][dj];
                    init = true;
                    p = di;
                    q = dj;
                }
        mate[u] = q;
        mate[v] = p;
        if (u < int(n) || (blocked[u] && !expand_blocked)) return;

        // rotate the odd cycle so the vertex matched outward comes first
        bool found = false;
        for (auto it = shallow[u].begin(); it != shallow[u].end() && !found;) {
            int si = *it;
            for (int j : deep[si])
                if (j == p) { found = true; break; }
            ++it;
            if (!found) {
                shallow[u].push_back(si);
                shallow[u].pop_front();
            }
        }
        auto it = shallow[u].begin();
        mate[*it] = mate[u];
        ++it;
        while (it != shallow[u].end()) {
            auto jt = std::next(it);
            mate[*it] = *jt;
            mate[*jt] = *it;
            it = std::next(jt);
        }
        for (int s : shallow[u]) {
            outer[s] = s;
            for (int j : deep[s]) outer[j] = s;
        }
        active[u] = false;
        free_slots.push_back(u);
        for (int s : shallow[u]) expand(s, expand_blocked);
    }

    void augment(int u, int v) {
        int p = outer[u];
        int q = outer[v];
        int outv = q;
        int fp = forest[p];
        mate[p] = q;
        mate[q] = p;
        expand(p);
        expand(q);
        while (fp != -1) {
            q = outer[forest[p]];
            p = outer[forest[q]];
            fp = forest[p];
            mate[p] = q;
            mate[q] = p;
            expand(p);
            expand(q);
        }
        p = outv;
        fp = forest[p];
        while (fp != -1) {
            q = outer[forest[p]];
            p = outer[forest[q]];
            fp = forest[p];
            mate[p] = q;
            mate[q] = p;
            expand(p);
            expand(q);
        }
    }

    int shrink_blossom(int u, int v) {
        int t = free_slots.back();
        free_slots.pop_back();
        std::vector<char> in_path(2 * n, 0);
        int u_ = u;
        while (u_ != -1) {
            in_path[outer[u_]] = 1;
            u_ = forest[outer[u_]];
        }
        int v_ = outer[v];
        while (!in_path[v_]) v_ = outer[forest[v_]];
        tip[t] = v_;

        std::list<int> circuit;
        u_ = outer[u];
        circuit.push_front(u_);
        while (u_ != tip[t]) {
            u_ = outer[forest[u_]];
            circuit.push_front(u_);
        }
        shallow[t].clear();
        deep[t].clear();
        for (int s : circuit) shallow[t].push_back(s);
        v_ = outer[v];
        while (v_ != tip[t]) {
            shallow[t].push_back(v_);
            v_ = outer[forest[v_]];
        }
        for (int s : shallow[t]) {
            outer[s] = t;
            for (int j : deep[s]) {
                deep[t].push_back(j);
                outer[j] = t;
            }
        }
        forest[t] = forest[tip[t]];
        type[t] = EVEN;
        root[t] = root[tip[t]];
        active[t] = true;
        outer[t] = t;
        mate[t] = mate[tip[t]];
        return t;
    }

    void reset() {
        for (std::size_t i = 0; i < 2 * n; ++i) {
            forest[i] = -1;
            root[i] = int(i);
            if (i >= n && active[i] && outer[i] == int(i)) destroy_blossom(int(i));
        }
        std::fill(visited.begin(), visited.end(), 0);
        forest_list.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if (mate[outer[i]] == -1) {
                type[outer[i]] = EVEN;
                if (!visited[outer[i]]) forest_list.push_back(int(i));
                visited[outer[i]] = 1;
            } else {
                type[outer[i]] = UNLABELED;
            }
        }
    }

    void grow() {
        reset();
        while (!forest_list.empty()) {
            int w = outer[forest_list.front()];
            forest_list.pop_front();
            bool restart = false;
            for (int u : deep[w]) {
                for (std::size_t v = 0; v < n && !restart; ++v) {
                    if (u == int(v) || edge_blocked(u, v)) continue;
                    if (type[outer[v]] == ODD) continue;
                    if (type[outer[v]] != EVEN) {
                        int vm = mate[outer[v]];
                        forest[outer[v]] = u;
                        type[outer[v]] = ODD;
                        root[outer[v]] = root[outer[u]];
                        forest[outer[vm]] = int(v);
                        type[outer[vm]] = EVEN;
                        root[outer[vm]] = root[outer[u]];
                        if (!visited[outer[vm]]) {
                            forest_list.push_back(vm);
                            visited[outer[vm]] = 1;
                        }
                    } else if (root[outer[v]] != root[outer[u]]) {
                        augment(u, int(v));
                        reset();
                        restart = true;
                    } else if (outer[u] != outer[int(v)]) {
                        int b = shrink_blossom(u, int(v));
                        forest_list.push_front(b);
                        visited[b] = 1;
                        restart = true;
                    }
                }
                if (restart) break;
            }
        }
        perfect = true;
        for (std::size_t i = 0; i < n; ++i)
            if (mate[outer[i]] == -1) perfect = false;
    }

    // greedy initial matching over currently tight edges, lowest degree first
    void heuristic() {
        std::vector<std::size_t> degree(n, 0);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                if (u != v && !edge_blocked(u, v)) ++degree[u];
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return degree[a] < degree[b]; });
        for (std::size_t u : order) {
            if (mate[outer[u]] != -1) continue;
            long long best = -1;
            for (std::size_t v = 0; v < n; ++v) {
                if (u == v || edge_blocked(u, v) || outer[u] == outer[v] ||
                    mate[outer[v]] != -1)
                    continue;
                if (best == -1 || degree[v] < degree[std::size_t(best)]) best = (long long)v;
            }
            if (best != -1) {
                mate[outer[u]] = int(best);
                mate[outer[std::size_t(best)]] = int(u);
            }
        }
    }

    void update_duals() {
        double e1 = 0, e2 = 0, e3 = 0;
        bool init1 = false, init2 = false, init3 = false;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v) {
                if (u == v) continue;
                if ((type[outer[u]] == EVEN && type[outer[v]] == UNLABELED) ||
                    (type[outer[v]] == EVEN && type[outer[u]] == UNLABELED)) {
                    if (!init1 || greater(e1, slack[u][v])) {
                        e1 = slack[u][v];
                        init1 = true;
                    }
                } else if (outer[u] != outer[v] && type[outer[u]] == EVEN &&
                           type[outer[v]] == EVEN) {
                    if (!init2 || greater(e2, slack[u][v])) {
                        e2 = slack[u][v];
                        init2 = true;
                    }
                }
            }
        for (std::size_t i = n; i < 2 * n; ++i)
            if (active[i] && int(i) == outer[i] && type[outer[i]] == ODD &&
                (!init3 || greater(e3, dual[i]))) {
                e3 = dual[i];
                init3 = true;
            }

        double e = 0.0;
        if (init1)
            e = e1;
        else if (init2)
            e = e2;
        else if (init3)
            e = e3;
        if (init2 && greater(e, e2 / 2.0)) e = e2 / 2.0;
        if (init3 && greater(e, e3)) e = e3;

        for (std::size_t i = 0; i < 2 * n; ++i) {
            if (int(i) != outer[i]) continue;
            if (active[i] && type[outer[i]] == EVEN)
                dual[i] += e;
            else if (active[i] && type[outer[i]] == ODD)
                dual[i] -= e;
        }

        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v) {
                if (u == v || outer[u] == outer[v]) continue;
                if (type[outer[u]] == EVEN && type[outer[v]] == EVEN)
                    slack[u][v] -= 2.0 * e;
                else if (type[outer[u]] == ODD && type[outer[v]] == ODD)
                    slack[u][v] += 2.0 * e;
                else if ((type[outer[v]] == UNLABELED && type[outer[u]] == EVEN) ||
                         (type[outer[u]] == UNLABELED && type[outer[v]] == EVEN))
                    slack[u][v] -= e;
                else if ((type[outer[v]] == UNLABELED && type[outer[u]] == ODD) ||
                         (type[outer[u]] == UNLABELED && type[outer[v]] == ODD))
                    slack[u][v] += e;
            }

        for (std::size_t i = n; i < 2 * n; ++i) {
            if (greater(dual[i], 0.0)) {
                blocked[i] = true;
            } else if (active[i] && blocked[i]) {
                if (mate[i] == -1)
                    destroy_blossom(int(i));
                else {
                    blocked[i] = false;
                    expand(int(i));
                }
            }
        }
    }

    void clear() {
        free_slots.clear();
        for (std::size_t i = n; i < 2 * n; ++i) free_slots.push_back(int(i));
        for (std::size_t i = 0; i < 2 * n; ++i) {
            outer[i] = int(i);
            deep[i].clear();
            if (i < n) deep[i].push_back(int(i));
            shallow[i].clear();
            active[i] = i < n;
            type[i] = UNLABELED;
            forest[i] = -1;
            root[i] = int(i);
            blocked[i] = false;
            dual[i] = 0.0;
            mate[i] = -1;
            tip[i] = int(i);
        }
    }

    std::vector<std::pair<std::size_t, std::size_t>> retrieve() {
        for (std::size_t i = 0; i < 2 * n; ++i)
            if (active[i] && mate[i] != -1 && outer[i] == int(i)) expand(int(i), true);
        std::vector<std::pair<std::size_t, std::size_t>> m;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                if (mate[u] == int(v)) m.emplace_back(u, v);
        return m;
    }
};

bool matching_lex_less(const std::vector<std::pair<std::size_t, std::size_t>>& a,
                       const std::vector<std::pair<std::size_t, std::size_t>>& b) {
    return a < b;
}

} // namespace

MatchResult max_weight_perfect_matching(const Mat& weights) {
    const std::size_t n = weights.rows;
    if (n != weights.cols) throw Error("matching: weight matrix must be square");
    if (n < 2 || n % 2 != 0) throw Error("matching: vertex count must be even and >= 2");
    double scale = 0.0;
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
            double w = weights(u, v);
            if (!std::isfinite(w)) throw Error("matching: non-finite weight");
            if (u != v && w < 0.0) throw Error("matching: negative weight");
            if (u != v && std::abs(w - weights(v, u)) > 1e-12 * std::max(1.0, std::abs(w)))
                throw Error("matching: weight matrix not symmetric");
            scale = std::max(scale, std::abs(w));
        }
    if (scale == 0.0) scale = 1.0;

    // maximize by minimizing normalized negated costs
    Mat cost(n, n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (u != v) cost(u, v) = -weights(u, v) / scale;

    BlossomSolver solver(cost);
    auto pairs = solver.solve();
    std::sort(pairs.begin(), pairs.end());

    // canonicalize exact ties toward the lexicographically smallest matching
    const double tie_tol = 1e-12 * scale;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (std::size_t j = i + 1; j < pairs.size(); ++j) {
                auto [a, b] = pairs[i];
                auto [c, d] = pairs[j];
                double base = weights(a, b) + weights(c, d);
                std::pair<std::size_t, std::size_t> alts[2][2] = {
                    {std::minmax(a, c), std::minmax(b, d)},
                    {std::minmax(a, d), std::minmax(b, c)}};
                for (auto& alt : alts) {
                    double w2 = weights(alt[0].first, alt[0].second) +
                                weights(alt[1].first, alt[1].second);
                    if (std::abs(w2 - base) > tie_tol) continue;
                    auto cand = pairs;
                    cand[i] = std::min(alt[0], alt[1]);
                    cand[j] = std::max(alt[0], alt[1]);
                    std::sort(cand.begin(), cand.end());
                    if (matching_lex_less(cand, pairs)) {
                        pairs = std::move(cand);
                        changed = true;
                    }
                }
            }
    }

    MatchResult res;
    res.pairs = std::move(pairs);
    for (const auto& [u, v] : res.pairs) res.total_weight += weights(u, v);
    return res;
}

} // namespace igt
