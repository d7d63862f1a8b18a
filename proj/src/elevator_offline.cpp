#include "loopline/elevator_offline.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace loopline::elevator {

namespace {

void require_line(const Topology& topo) {
    if (topo.is_circuit())
        throw std::invalid_argument("elevator mode runs on lines only");
}

}  // namespace

ArcLoads compute_arc_loads(const RequestSequence& seq, const Topology& line,
                           const FleetConfig& fleet) {
    require_line(line);
    check_fleet(fleet);
    const int edges = line.edge_count();
    ArcLoads out;
    out.up_load.assign(edges, 0);
    out.down_load.assign(edges, 0);
    for (const Request& r : seq.requests) {
        if (r.is_up())
            for (NodeId v = r.origin; v < r.destination; ++v) out.up_load[v] += r.load;
        else
            for (NodeId v = r.destination; v < r.origin; ++v) out.down_load[v] += r.load;
    }
    out.up_mult.resize(edges);
    out.down_mult.resize(edges);
    for (int e = 0; e < edges; ++e) {
        out.up_mult[e] = (int)((out.up_load[e] + fleet.capacity - 1) / fleet.capacity);
        out.down_mult[e] = (int)((out.down_load[e] + fleet.capacity - 1) / fleet.capacity);
    }
    return out;
}

std::optional<FlowNetwork> build_flow_network(const ArcLoads& loads,
                                              const Topology& line) {
    require_line(line);
    if (loads.all_zero()) return std::nullopt;

    const int nodes = line.node_count();
    const int edges = line.edge_count();
    FlowNetwork net;
    net.edge_lengths = line.edge_lengths();
    std::vector<int> up_copy(nodes, -1), down_copy(nodes, -1);

    auto ensure_copy = [&](std::vector<int>& table, NodeId v, bool up) {
        if (table[v] < 0) {
            table[v] = (int)net.copies.size();
            net.copies.push_back({v, up, false, false});
        }
        return table[v];
    };

    for (int e = 0; e < edges; ++e) {
        if (loads.up_mult[e] > 0) {
            int o = ensure_copy(up_copy, e, true);
            int d = ensure_copy(up_copy, e + 1, true);
            net.copies[o].origin_role = true;
            net.copies[d].dest_role = true;
        }
        if (loads.down_mult[e] > 0) {
            int o = ensure_copy(down_copy, e + 1, false);
            int d = ensure_copy(down_copy, e, false);
            net.copies[o].origin_role = true;
            net.copies[d].dest_role = true;
        }
    }

    // Required traversal arcs.
    for (int e = 0; e < edges; ++e) {
        if (loads.up_mult[e] > 0)
            net.arcs.push_back({net.copy_node(up_copy[e]), net.copy_node(up_copy[e + 1]),
                                line.edge_length(e), FlowArcKind::Up, loads.up_mult[e], e});
        if (loads.down_mult[e] > 0)
            net.arcs.push_back({net.copy_node(down_copy[e + 1]), net.copy_node(down_copy[e]),
                                line.edge_length(e), FlowArcKind::Down, loads.down_mult[e], e});
    }
    // Source, sink and link arcs, gated by copy roles.
    for (int c = 0; c < (int)net.copies.size(); ++c) {
        const auto& copy = net.copies[c];
        if (copy.origin_role)
            net.arcs.push_back({FlowNetwork::s_node, net.copy_node(c),
                                line.position(copy.phys), FlowArcKind::Source, -1, -1});
        if (copy.dest_role)
            net.arcs.push_back({net.copy_node(c), FlowNetwork::t_node,
                                line.position(copy.phys), FlowArcKind::Sink, -1, -1});
    }
    for (int a = 0; a < (int)net.copies.size(); ++a) {
        if (!net.copies[a].dest_role) continue;
        for (int b = 0; b < (int)net.copies.size(); ++b) {
            if (a == b || !net.copies[b].origin_role) continue;
            net.arcs.push_back({net.copy_node(a), net.copy_node(b),
                                line.distance(net.copies[a].phys, net.copies[b].phys),
                                FlowArcKind::Link, -1, -1});
        }
    }
    return net;
}

// --- exact solver ------------------------------------------------------------

namespace {

struct Constraint {
    std::vector<int> pos;  // +1 variables
    std::vector<int> neg;  // -1 variables
    long long rhs = 0;
    bool equality = true;
};

struct Solver {
    const FlowNetwork& net;
    std::vector<int> vars;          // free arc indices
    std::vector<int> var_of_arc;    // arc -> var index or -1
    std::vector<long long> lo, hi;
    std::vector<Constraint> constraints;
    std::vector<int> order;         // branching order, cost descending
    Rat required_cost;
    long long nodes_explored = 0;

    struct NodeNeed {
        long long rhs = 0;  // free inflow must exceed free outflow by this
        std::vector<std::pair<int, const Rat*>> in_arcs;  // (var, cost)
        std::vector<int> out_vars;
    };
    std::vector<NodeNeed> node_needs;

    explicit Solver(const FlowNetwork& n) : net(n) {
        var_of_arc.assign(net.arcs.size(), -1);
        long long total_mult = 0;
        for (int a = 0; a < (int)net.arcs.size(); ++a) {
            const auto& arc = net.arcs[a];
            if (arc.required >= 0) {
                total_mult += arc.required;
                required_cost += arc.cost * Rat(arc.required);
            } else {
                var_of_arc[a] = (int)vars.size();
                vars.push_back(a);
            }
        }
        lo.assign(vars.size(), 0);
        hi.assign(vars.size(), 0);
        for (size_t v = 0; v < vars.size(); ++v) {
            FlowArcKind k = net.arcs[vars[v]].kind;
            hi[v] = (k == FlowArcKind::Source || k == FlowArcKind::Sink) ? 1 : total_mult + 2;
        }

        // Flow conservation per copy node, with required flow folded into rhs.
        for (int node = 2; node < net.node_count(); ++node) {
            Constraint c;
            long long req_in = 0, req_out = 0;
            for (int a = 0; a < (int)net.arcs.size(); ++a) {
                const auto& arc = net.arcs[a];
                if (arc.to == node) {
                    if (arc.required >= 0) req_in += arc.required;
                    else c.pos.push_back(var_of_arc[a]);
                }
                if (arc.from == node) {
                    if (arc.required >= 0) req_out += arc.required;
                    else c.neg.push_back(var_of_arc[a]);
                }
            }
            c.rhs = req_out - req_in;
            constraints.push_back(std::move(c));
        }
        // Unit flow out of s; unit flow into t follows but helps propagation.
        Constraint cs, ct;
        for (int a = 0; a < (int)net.arcs.size(); ++a) {
            if (net.arcs[a].from == FlowNetwork::s_node) cs.pos.push_back(var_of_arc[a]);
            if (net.arcs[a].to == FlowNetwork::t_node) ct.pos.push_back(var_of_arc[a]);
        }
        cs.rhs = 1;
        ct.rhs = 1;
        constraints.push_back(std::move(cs));
        constraints.push_back(std::move(ct));
        // In the walk every link traversal is followed by a required
        // traversal or the sink, so link flow is budgeted by Sum m + 1;
        // expressed as -Sum links >= -(Sum m + 1).
        Constraint budget;
        budget.equality = false;
        budget.rhs = -(total_mult + 1);
        for (size_t v = 0; v < vars.size(); ++v)
            if (net.arcs[vars[v]].kind == FlowArcKind::Link) budget.neg.push_back((int)v);
        constraints.push_back(std::move(budget));

        // per-node inflow needs used in the search's lower bound
        for (int node = 2; node < net.node_count(); ++node) {
            NodeNeed need;
            long long req_in = 0, req_out = 0;
            for (int a = 0; a < (int)net.arcs.size(); ++a) {
                const auto& arc = net.arcs[a];
                if (arc.to == node) {
                    if (arc.required >= 0) req_in += arc.required;
                    else need.in_arcs.push_back({var_of_arc[a], &arc.cost});
                }
                if (arc.from == node) {
                    if (arc.required >= 0) req_out += arc.required;
                    else need.out_vars.push_back(var_of_arc[a]);
                }
            }
            need.rhs = req_out - req_in;
            node_needs.push_back(std::move(need));
        }
        {
            NodeNeed tneed;
            tneed.rhs = 1;
            for (int a = 0; a < (int)net.arcs.size(); ++a)
                if (net.arcs[a].to == FlowNetwork::t_node)
                    tneed.in_arcs.push_back({var_of_arc[a], &net.arcs[a].cost});
            node_needs.push_back(std::move(tneed));
        }

        order.resize(vars.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return net.arcs[vars[b]].cost < net.arcs[vars[a]].cost;
        });
    }

    void add_cut(const std::set<int>& nodes_in_w) {
        Constraint c;
        c.equality = false;
        c.rhs = 2;
        for (int a = 0; a < (int)net.arcs.size(); ++a) {
            const auto& arc = net.arcs[a];
            bool fi = nodes_in_w.count(arc.from) > 0;
            bool ti = nodes_in_w.count(arc.to) > 0;
            if (fi == ti) continue;
            if (arc.required >= 0) c.rhs -= arc.required;
            else c.pos.push_back(var_of_arc[a]);
        }
        if (c.rhs <= 0) return;  // already satisfied by required arcs
        constraints.push_back(std::move(c));
    }

    bool propagate(std::vector<long long>& l, std::vector<long long>& h) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Constraint& c : constraints) {
                long long min_act = 0, max_act = 0;
                for (int v : c.pos) { min_act += l[v]; max_act += h[v]; }
                for (int v : c.neg) { min_act -= h[v]; max_act -= l[v]; }
                if (c.equality ? (min_act > c.rhs || max_act < c.rhs) : (max_act < c.rhs))
                    return false;
                for (int v : c.pos) {
                    long long rest_max = max_act - h[v];
                    long long nl = c.rhs - rest_max;  // holds for == and >=
                    if (nl > l[v]) { l[v] = nl; changed = true; }
                    if (c.equality) {
                        long long rest_min = min_act - l[v];
                        long long nh = c.rhs - rest_min;
                        if (nh < h[v]) { h[v] = nh; changed = true; }
                    }
                    if (l[v] > h[v]) return false;
                }
                for (int v : c.neg) {
                    long long rest_max = max_act + l[v];
                    long long nh = rest_max - c.rhs;  // holds for == and >=
                    if (nh < h[v]) { h[v] = nh; changed = true; }
                    if (c.equality) {
                        long long rest_min = min_act + h[v];
                        long long nl = rest_min - c.rhs;
                        if (nl > l[v]) { l[v] = nl; changed = true; }
                    }
                    if (l[v] > h[v]) return false;
                }
            }
            // Cost filtering: no variable may rise so far above its floor
            // that the fixed part alone would beat the pruning bound.
            if (have_prune_bound) {
                Rat lb = cost_floor(l);
                if (prune_bound < lb) return false;
                Rat slack = prune_bound - lb;
                for (size_t v = 0; v < vars.size(); ++v) {
                    const Rat& cost = net.arcs[vars[v]].cost;
                    if (h[v] == l[v] || !(cost > Rat(0))) continue;
                    // largest k with k * cost <= slack
                    long long room = floor_div(slack, cost);
                    if (l[v] + room < h[v]) { h[v] = l[v] + room; changed = true; }
                    if (l[v] > h[v]) return false;
                }
            }
        }
        return true;
    }

    static long long floor_div(const Rat& a, const Rat& b) {
        // floor(a/b) for nonnegative a, positive b
        Rat q = a / b;
        return q.num() / q.den();
    }

    Rat cost_floor(const std::vector<long long>& l) const {
        Rat c = required_cost;
        for (size_t v = 0; v < vars.size(); ++v)
            if (l[v] > 0) c += net.arcs[vars[v]].cost * Rat(l[v]);
        return c;
    }

    // cost_floor plus the cheapest way to cover every node's missing
    // inflow; admissible since each extra unit is counted at its head only.
    Rat cost_lower_bound(const std::vector<long long>& l,
                         const std::vector<long long>& h) const {
        Rat c = cost_floor(l);
        for (const NodeNeed& need : node_needs) {
            long long in_lo = 0, out_lo = 0;
            for (auto [v, cost] : need.in_arcs) in_lo += l[v];
            for (int v : need.out_vars) out_lo += l[v];
            long long missing = need.rhs + out_lo - in_lo;
            if (missing <= 0) continue;
            Rat cheapest;
            bool found = false;
            for (auto [v, cost] : need.in_arcs)
                if (h[v] > l[v] && (!found || *cost < cheapest)) { cheapest = *cost; found = true; }
            if (found) c += cheapest * Rat(missing);
        }
        return c;
    }

    bool best_found = false;
    Rat best_cost;
    std::vector<long long> best_values;
    bool have_ceiling = false;
    Rat ceiling;  // admissible upper bound on the optimum
    bool have_prune_bound = false;
    Rat prune_bound;

    void search(std::vector<long long> l, std::vector<long long> h) {
        ++nodes_explored;
        if (!propagate(l, h)) return;
        Rat lb = cost_lower_bound(l, h);
        if (best_found ? !(lb < best_cost) : (have_prune_bound && prune_bound < lb)) return;
        int branch = -1;
        for (int v : order)
            if (l[v] < h[v]) { branch = v; break; }
        if (branch < 0) {
            Rat cost = cost_floor(l);  // everything fixed: exact
            if (!best_found || cost < best_cost) {
                best_found = true;
                best_cost = cost;
                best_values = l;
                have_prune_bound = true;
                prune_bound = best_cost;
            }
            return;
        }
        for (long long val = l[branch]; val <= h[branch]; ++val) {
            auto nl = l; auto nh = h;
            nl[branch] = nh[branch] = val;
            search(std::move(nl), std::move(nh));
        }
    }

    bool solve(IntegerFlow& out) {
        best_found = false;
        have_prune_bound = have_ceiling;
        if (have_ceiling) prune_bound = ceiling;
        search(lo, hi);
        if (!best_found && have_ceiling) {
            // the ceiling should never cut off every solution; drop it and
            // search again rather than trust it blindly
            have_prune_bound = false;
            search(lo, hi);
        }
        if (!best_found) return false;
        out.values.assign(net.arcs.size(), 0);
        for (int a = 0; a < (int)net.arcs.size(); ++a)
            out.values[a] = net.arcs[a].required >= 0 ? net.arcs[a].required
                                                      : best_values[var_of_arc[a]];
        out.objective = best_cost;
        out.nodes_explored += nodes_explored;
        return true;
    }
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Connected components of the positive-flow support; returns the copy-node
// sets of every component not containing the source.
std::vector<std::set<int>> isolated_components(const FlowNetwork& net,
                                               const std::vector<long long>& values) {
    UnionFind uf(net.node_count());
    for (int a = 0; a < (int)net.arcs.size(); ++a)
        if (values[a] > 0) uf.unite(net.arcs[a].from, net.arcs[a].to);
    std::map<int, std::set<int>> comps;
    for (int node = 2; node < net.node_count(); ++node) {
        bool touched = false;
        for (int a = 0; a < (int)net.arcs.size() && !touched; ++a)
            if (values[a] > 0 && (net.arcs[a].from == node || net.arcs[a].to == node))
                touched = true;
        if (touched) comps[uf.find(node)].insert(node);
    }
    std::vector<std::set<int>> isolated;
    const int s_root = uf.find(FlowNetwork::s_node);
    for (auto& [root, members] : comps)
        if (root != s_root) isolated.push_back(std::move(members));
    return isolated;
}

}  // namespace

IntegerFlow solve_min_cost_flow(const FlowNetwork& net) {
    Solver solver(net);
    // A closed walk serving every multiplicity exists whose cost is
    // 2 * max(m_up, m_down, reach) per edge; no feasible flow needs to cost
    // more, which prunes the search hard.
    if (!net.edge_lengths.empty()) {
        std::vector<int> mult_up(net.edge_lengths.size(), 0),
            mult_down(net.edge_lengths.size(), 0);
        for (const auto& arc : net.arcs)
            if (arc.required >= 0)
                (arc.kind == FlowArcKind::Up ? mult_up : mult_down)[arc.edge] = arc.required;
        int reach = 0;
        for (int e = 0; e < (int)net.edge_lengths.size(); ++e)
            if (mult_up[e] > 0 || mult_down[e] > 0) reach = e + 1;
        Rat bound(0);
        for (int e = 0; e < reach; ++e)
            bound += net.edge_lengths[e] * Rat(2 * std::max({mult_up[e], mult_down[e], 1}));
        solver.ceiling = bound;
        solver.have_ceiling = true;
    }
    IntegerFlow flow;
    std::set<std::set<int>> seen_cuts;
    for (int round = 0;; ++round) {
        if (round > 1000) throw std::logic_error("lazy cycle separation did not terminate");
        IntegerFlow candidate;
        candidate.nodes_explored = flow.nodes_explored;
        if (!solver.solve(candidate))
            throw std::logic_error("min-cost flow is infeasible on a well-formed network");
        candidate.cut_rounds = round;
        candidate.cuts_added = flow.cuts_added;
        flow = std::move(candidate);
        auto isolated = isolated_components(net, flow.values);
        if (isolated.empty()) return flow;
        for (const auto& w : isolated) {
            if (!seen_cuts.insert(w).second)
                throw std::logic_error("lazy separation revisited a cut; no progress");
            solver.add_cut(w);
            ++flow.cuts_added;
        }
    }
}

std::string dump_flow_network(const FlowNetwork& net, const IntegerFlow* flow) {
    std::ostringstream os;
    os << "flow network: " << net.copies.size() << " copies, " << net.arcs.size() << " arcs\n";
    for (int c = 0; c < (int)net.copies.size(); ++c) {
        const auto& copy = net.copies[c];
        os << "  node " << net.copy_node(c) << ": v" << copy.phys << (copy.up ? "^up" : "^down")
           << (copy.origin_role ? " origin" : "") << (copy.dest_role ? " dest" : "") << "\n";
    }
    auto name = [&](int node) -> std::string {
        if (node == FlowNetwork::s_node) return "s";
        if (node == FlowNetwork::t_node) return "t";
        const auto& c = net.copies[node - 2];
        return "v" + std::to_string(c.phys) + (c.up ? "^up" : "^down");
    };
    for (int a = 0; a < (int)net.arcs.size(); ++a) {
        const auto& arc = net.arcs[a];
        os << "  arc " << name(arc.from) << " -> " << name(arc.to) << " cost=" << arc.cost.str();
        if (arc.required >= 0) os << " required=" << arc.required;
        if (flow) os << " flow=" << flow->values[a];
        os << "\n";
    }
    if (flow)
        os << "objective=" << flow->objective.str() << " cuts=" << flow->cuts_added << "\n";
    return os.str();
}

// --- decomposition -----------------------------------------------------------

namespace {

// Euler path over the support, then physical unit moves.
std::vector<std::pair<NodeId, NodeId>> euler_moves(const IntegerFlow& flow,
                                                   const FlowNetwork& net) {
    std::vector<long long> remaining = flow.values;
    std::vector<std::vector<int>> out_arcs(net.node_count());
    for (int a = 0; a < (int)net.arcs.size(); ++a)
        if (remaining[a] > 0) out_arcs[net.arcs[a].from].push_back(a);

    auto phys = [&](int node) -> NodeId {
        return node < 2 ? 0 : net.copies[node - 2].phys;
    };
    auto direction = [&](int a) -> int {
        NodeId d = phys(net.arcs[a].to) - phys(net.arcs[a].from);
        return d > 0 ? 1 : d < 0 ? -1 : 0;
    };

    // Hierholzer with a bias toward continuing in the travel direction, so
    // the walk decomposes into long monotone runs.
    auto pick = [&](int node, int prev_dir) -> int {
        int best = -1;
        auto better = [&](int a, int b) {
            auto rank = [&](int arc) {
                const auto& ar = net.arcs[arc];
                bool required = ar.required >= 0;
                if (required && direction(arc) == prev_dir && prev_dir != 0) return 0;
                if (required) return 1;
                if (ar.kind == FlowArcKind::Link && ar.cost.is_zero()) return 2;
                if (ar.kind == FlowArcKind::Link) return 3;
                return 4;  // sink last
            };
            int ra = rank(a), rb = rank(b);
            if (ra != rb) return ra < rb;
            if (net.arcs[a].cost != net.arcs[b].cost) return net.arcs[a].cost < net.arcs[b].cost;
            return a < b;
        };
        for (int a : out_arcs[node])
            if (remaining[a] > 0 && (best < 0 || better(a, best))) best = a;
        return best;
    };

    std::vector<int> path;  // arc sequence, built backwards
    std::vector<std::pair<int, int>> stack;  // (node, entering arc)
    stack.push_back({FlowNetwork::s_node, -1});
    while (!stack.empty()) {
        auto [node, entering] = stack.back();
        int prev_dir = entering >= 0 ? ([&] {
            NodeId d = phys(net.arcs[entering].to) - phys(net.arcs[entering].from);
            return d > 0 ? 1 : d < 0 ? -1 : 0;
        })() : 0;
        int a = pick(node, prev_dir);
        if (a >= 0) {
            --remaining[a];
            stack.push_back({net.arcs[a].to, a});
        } else {
            stack.pop_back();
            if (entering >= 0) path.push_back(entering);
        }
    }
    std::reverse(path.begin(), path.end());

    for (long long r : remaining)
        if (r != 0) throw std::logic_error("flow support is not connected; decomposition failed");

    std::vector<std::pair<NodeId, NodeId>> moves;
    for (int a : path) {
        NodeId from = phys(net.arcs[a].from), to = phys(net.arcs[a].to);
        int step = to > from ? 1 : -1;
        for (NodeId v = from; v != to; v += step) moves.push_back({v, v + step});
    }
    return moves;
}

// Any cost-optimal flow crosses edge e exactly max(m_up, m_down, 1-if-
// anything-lies-beyond) times per direction. This builds the canonical
// depot-anchored sweep walk over that profile: full sweeps from v_0 while
// the remaining tokens stay connected to the depot, with mid-descent
// excursions only for bumps that a later sweep could no longer reach. Its
// runs match how passengers naturally share a vehicle, which the support
// walk's arbitrary deadhead placement may not.
std::vector<std::pair<NodeId, NodeId>> profile_walk(const FlowNetwork& net) {
    NodeId top = 0;
    std::map<int, int> required_up, required_down;
    for (const auto& arc : net.arcs) {
        if (arc.required < 0) continue;
        top = std::max(top, (NodeId)(arc.edge + 1));
        (arc.kind == FlowArcKind::Up ? required_up : required_down)[arc.edge] = arc.required;
    }
    std::vector<int> up(top, 0), down(top, 0);
    for (int e = 0; e < top; ++e) {
        int t = std::max({required_up.count(e) ? required_up[e] : 0,
                          required_down.count(e) ? required_down[e] : 0, 1});
        up[e] = down[e] = t;
    }

    std::vector<std::pair<NodeId, NodeId>> moves;
    NodeId q = 0;
    bool ascending = true;
    auto bump_below = [&](NodeId pos) {
        for (NodeId e = 0; e < pos; ++e)
            if (up[e] == 0) return true;
        return false;
    };
    while (true) {
        if (ascending) {
            if (q < top && up[q] > 0) {
                --up[q];
                moves.push_back({q, q + 1});
                ++q;
            } else {
                ascending = false;
            }
        } else if (q > 0 && q < top && up[q] > 0 && bump_below(q)) {
            ascending = true;  // unreachable bump: take it on the way down
        } else if (q > 0) {
            --down[q - 1];
            moves.push_back({q, q - 1});
            --q;
        } else if (up[0] > 0) {
            ascending = true;  // next sweep
        } else {
            break;
        }
    }
    for (int e = 0; e < top; ++e)
        if (up[e] != 0 || down[e] != 0)
            throw std::logic_error("profile walk left tokens behind");
    return moves;
}

// One passenger's ride: boards before move `board`, stays aboard through
// move `alight` (the first later arrival at the destination), occupying a
// seat on every move in between, turnarounds included.
struct Rider {
    int request;
    NodeId origin, destination;
    std::vector<std::pair<int, int>> candidates;  // (board, alight) move ranges
    int chosen = -1;
};

bool span_fits(const std::vector<int>& occupancy, const std::pair<int, int>& span, int cap) {
    for (int m = span.first; m <= span.second; ++m)
        if (occupancy[m] + 1 > cap) return false;
    return true;
}

void span_occupy(std::vector<int>& occupancy, const std::pair<int, int>& span, int delta) {
    for (int m = span.first; m <= span.second; ++m) occupancy[m] += delta;
}

// Greedy seating on a fixed walk, earliest stretch first.
bool first_fit(std::vector<Rider>& riders, std::vector<int>& occupancy, int cap) {
    bool all = true;
    for (Rider& rider : riders) {
        rider.chosen = -1;
        for (int c = 0; c < (int)rider.candidates.size(); ++c)
            if (span_fits(occupancy, rider.candidates[c], cap)) {
                rider.chosen = c;
                span_occupy(occupancy, rider.candidates[c], +1);
                break;
            }
        all = all && rider.chosen >= 0;
    }
    return all;
}

// Exact search over walks of the optimal crossing profile and boarding
// plans together. Token consumption order decides the walk shape; boarding
// choices are made per node visit. Used when the fast-path walks cannot
// seat everyone; if this fails too, no walk of objective length can.
class JointSeater {
public:
    JointSeater(const std::vector<int>& up_tokens, const std::vector<int>& down_tokens,
                const RequestSequence& seq, int cap)
        : cap_(cap), edges_((int)up_tokens.size()), up_(up_tokens), down_(down_tokens) {
        for (int i = 0; i < seq.count(); ++i) {
            const Request& r = seq.requests[i];
            classes_.push_back({r.origin, r.destination, i, r.load});
        }
        onboard_.assign(classes_.size(), 0);
    }

    bool solve() { return dfs(); }

    // Successful plan: per step the direction and who boarded.
    struct Step {
        bool up;
        std::vector<std::pair<int, int>> boardings;  // (class, count)
    };
    const std::vector<Step>& plan() const { return plan_; }

    struct Class_ {
        NodeId x, y;
        int request;
        int remaining;
    };
    const std::vector<Class_>& classes() const { return classes_; }

private:
    bool someone_unserved() const {
        for (const Class_& c : classes_)
            if (c.remaining) return true;
        return false;
    }

    bool load_infeasible() const {
        // Outstanding demand per edge and direction must still fit into the
        // remaining crossings. Waiting passengers need their whole span,
        // passengers on board only the part ahead of the vehicle.
        for (int e = 0; e < edges_; ++e) {
            long long need_up = 0, need_down = 0;
            for (size_t c = 0; c < classes_.size(); ++c) {
                const Class_& cl = classes_[c];
                if (cl.x < cl.y) {
                    if (cl.x <= e && e < cl.y) need_up += cl.remaining;
                    if (pos_ <= e && e < cl.y) need_up += onboard_[c];
                } else {
                    if (cl.y <= e && e < cl.x) need_down += cl.remaining;
                    if (cl.y <= e && e < pos_) need_down += onboard_[c];
                }
            }
            if (need_up > (long long)cap_ * up_[e]) return true;
            if (need_down > (long long)cap_ * down_[e]) return true;
        }
        return false;
    }

    std::string key() const {
        std::string k;
        k.reserve(2 * edges_ + 2 * classes_.size() + 1);
        k.push_back((char)pos_);
        for (int v : up_) k.push_back((char)v);
        for (int v : down_) k.push_back((char)v);
        for (int v : onboard_) k.push_back((char)v);
        for (const Class_& c : classes_) k.push_back((char)c.remaining);
        return k;
    }

    bool dfs() {
        // forced alights
        std::vector<int> alighted(classes_.size(), 0);
        for (size_t c = 0; c < classes_.size(); ++c)
            if (onboard_[c] > 0 && classes_[c].y == pos_) {
                alighted[c] = onboard_[c];
                onboard_[c] = 0;
            }
        bool ok = dfs_after_alight();
        if (!ok)
            for (size_t c = 0; c < classes_.size(); ++c) onboard_[c] += alighted[c];
        return ok;
    }

    bool dfs_after_alight() {
        bool tokens_left = false;
        for (int v : up_) tokens_left = tokens_left || v;
        for (int v : down_) tokens_left = tokens_left || v;
        if (!tokens_left) {
            int aboard = 0;
            for (int v : onboard_) aboard += v;
            return pos_ == 0 && aboard == 0 && !someone_unserved();
        }
        if (++nodes_ > 4'000'000) return false;
        if (load_infeasible()) return false;
        std::string k = key();
        if (failed_.count(k)) return false;

        int seats = cap_;
        for (int v : onboard_) seats -= v;

        for (int dir = 0; dir < 2; ++dir) {
            bool up = dir == 0;
            if (up && (pos_ >= edges_ || up_[pos_] == 0)) continue;
            if (!up && (pos_ == 0 || down_[pos_ - 1] == 0)) continue;

            // Board only passengers heading the same way; boarding against
            // the travel direction is dominated by a later pass.
            std::vector<int> here;
            for (size_t c = 0; c < classes_.size(); ++c)
                if (classes_[c].remaining > 0 && classes_[c].x == pos_ &&
                    (classes_[c].x < classes_[c].y) == up)
                    here.push_back((int)c);
            std::vector<std::vector<std::pair<int, int>>> combos;
            std::vector<std::pair<int, int>> current;
            build_combos(here, 0, seats, current, combos);
            std::sort(combos.begin(), combos.end(),
                      [](const auto& a, const auto& b) { return total(a) > total(b); });

            for (const auto& combo : combos) {
                for (auto [c, k2] : combo) {
                    onboard_[c] += k2;
                    classes_[c].remaining -= k2;
                }
                if (up) { --up_[pos_]; ++pos_; } else { --down_[pos_ - 1]; --pos_; }
                bool ok = dfs();
                if (!up) { ++pos_; ++down_[pos_ - 1]; } else { --pos_; ++up_[pos_]; }
                if (ok) {
                    plan_.push_back({up, combo});
                    return true;
                }
                for (auto [c, k2] : combo) {
                    onboard_[c] -= k2;
                    classes_[c].remaining += k2;
                }
            }
        }
        failed_.insert(std::move(k));
        return false;
    }

    static int total(const std::vector<std::pair<int, int>>& combo) {
        int t = 0;
        for (auto [c, k] : combo) t += k;
        return t;
    }

    void build_combos(const std::vector<int>& here, size_t i, int seats,
                      std::vector<std::pair<int, int>>& current,
                      std::vector<std::vector<std::pair<int, int>>>& out) {
        if (i == here.size()) {
            out.push_back(current);
            return;
        }
        int c = here[i];
        int max_k = std::min(seats, classes_[c].remaining);
        for (int k = max_k; k >= 0; --k) {
            if (k > 0) current.push_back({c, k});
            build_combos(here, i + 1, seats - k, current, out);
            if (k > 0) current.pop_back();
        }
    }

    int cap_;
    int edges_;
    NodeId pos_ = 0;
    std::vector<int> up_, down_;
    std::vector<Class_> classes_;
    std::vector<int> onboard_;
    std::vector<Step> plan_;  // reversed (success unwinds outward)
    std::set<std::string> failed_;
    long long nodes_ = 0;
};

}  // namespace

TransportationSchedule decompose_flow(const IntegerFlow& flow, const FlowNetwork& net,
                                      const RequestSequence& seq, const Topology& line,
                                      const FleetConfig& fleet) {
    require_line(line);
    check_fleet(fleet);
    TransportationSchedule sched;
    sched.tours.resize(fleet.vehicles);
    auto moves = euler_moves(flow, net);
    if (moves.empty() && seq.total_passengers() == 0) return sched;

    // Seat every passenger on a contiguous stretch of the walk: board at a
    // visit of the origin, alight on first reaching the destination.
    // Earliest stretches are tried first.
    std::vector<Rider> all_riders;
    for (int i = 0; i < seq.count(); ++i)
        for (int p = 0; p < seq.requests[i].load; ++p)
            all_riders.push_back({i, seq.requests[i].origin, seq.requests[i].destination,
                                  {}, -1});
    auto enumerate_candidates = [&] {
        for (Rider& rider : all_riders) {
            rider.candidates.clear();
            rider.chosen = -1;
            for (int b = 0; b < (int)moves.size(); ++b) {
                if (moves[b].first != rider.origin) continue;
                for (int a = b; a < (int)moves.size(); ++a)
                    if (moves[a].second == rider.destination) {
                        rider.candidates.push_back({b, a});
                        break;
                    }
            }
        }
        std::stable_sort(all_riders.begin(), all_riders.end(),
                         [](const Rider& a, const Rider& b) {
                             return a.candidates.size() < b.candidates.size();
                         });
    };

    enumerate_candidates();
    std::vector<int> occupancy(moves.size(), 0);
    bool seated = first_fit(all_riders, occupancy, fleet.capacity);

    if (!seated) {
        // The support walk's deadhead placement may strand passengers; the
        // canonical sweep walk over the same crossing profile costs the
        // same and matches natural vehicle sharing.
        auto sweeps = profile_walk(net);
        Rat cost(0);
        for (const auto& mv : sweeps) cost += line.edge_length(std::min(mv.first, mv.second));
        if (cost == flow.objective) {
            moves = std::move(sweeps);
            enumerate_candidates();
            occupancy.assign(moves.size(), 0);
            seated = first_fit(all_riders, occupancy, fleet.capacity);
        }
    }

    if (!seated) {
        // Choose the walk and the boarding plan together, exactly. When no
        // walk of objective length can seat everyone (the flow model
        // prices per-arc loads, not seat consecutivity), retry with the
        // cheapest extra crossing pairs until one can; passengers are
        // never preempted mid-journey.
        std::vector<int> base_up(line.edge_count(), 0), base_down(line.edge_count(), 0);
        for (const auto& mv : profile_walk(net)) {
            if (mv.second > mv.first) ++base_up[mv.first];
            else ++base_down[mv.second];
        }

        // candidate augmentations: multisets of edges, cheapest total first
        std::vector<std::vector<int>> augmentations = {{}};
        for (int e = 0; e < line.edge_count(); ++e) augmentations.push_back({e});
        for (int e = 0; e < line.edge_count(); ++e)
            for (int f = e; f < line.edge_count(); ++f) augmentations.push_back({e, f});
        auto extra_cost = [&](const std::vector<int>& aug) {
            Rat c(0);
            for (int e : aug) c += Rat(2) * line.edge_length(e);
            return c;
        };
        std::stable_sort(augmentations.begin(), augmentations.end(),
                         [&](const auto& a, const auto& b) { return extra_cost(a) < extra_cost(b); });

        for (const auto& aug : augmentations) {
            std::vector<int> up_tokens = base_up, down_tokens = base_down;
            for (int e : aug) { ++up_tokens[e]; ++down_tokens[e]; }
            JointSeater joint(up_tokens, down_tokens, seq, fleet.capacity);
            if (!joint.solve()) continue;
            auto steps = joint.plan();
            std::reverse(steps.begin(), steps.end());
            moves.clear();
            std::vector<Rider> riders;
            std::vector<int> aboard;
            NodeId pos = 0;
            for (const auto& step : steps) {
                for (auto [c, count] : step.boardings)
                    for (int i = 0; i < count; ++i) {
                        const auto& cl = joint.classes()[c];
                        riders.push_back({cl.request, cl.x, cl.y,
                                          {{(int)moves.size(), -1}}, 0});
                        aboard.push_back((int)riders.size() - 1);
                    }
                NodeId next = step.up ? pos + 1 : pos - 1;
                moves.push_back({pos, next});
                pos = next;
                for (auto it = aboard.begin(); it != aboard.end();)
                    if (riders[*it].destination == pos) {
                        riders[*it].candidates[0].second = (int)moves.size() - 1;
                        it = aboard.erase(it);
                    } else {
                        ++it;
                    }
            }
            all_riders = std::move(riders);
            seated = true;
            break;
        }
    }

    if (!seated) {
        // Safety net: seat whoever fits on the current walk and append
        // dedicated depot round trips for the rest.
        occupancy.assign(moves.size(), 0);
        first_fit(all_riders, occupancy, fleet.capacity);
        std::vector<Rider*> leftover;
        for (Rider& rider : all_riders)
            if (rider.chosen < 0) leftover.push_back(&rider);
        while (!leftover.empty()) {
            bool up = leftover.front()->origin < leftover.front()->destination;
            std::vector<Rider*> batch;
            for (Rider* r : leftover)
                if ((int)batch.size() < fleet.capacity &&
                    (r->origin < r->destination) == up)
                    batch.push_back(r);
            NodeId apex = 0;
            for (Rider* r : batch) apex = std::max(apex, std::max(r->origin, r->destination));
            int base = (int)moves.size();
            for (NodeId v = 0; v < apex; ++v) moves.push_back({v, v + 1});
            for (NodeId v = apex; v > 0; --v) moves.push_back({v, v - 1});
            for (Rider* r : batch) {
                for (int b = base; b < (int)moves.size(); ++b) {
                    if (moves[b].first != r->origin) continue;
                    for (int a = b; a < (int)moves.size(); ++a)
                        if (moves[a].second == r->destination) {
                            r->candidates.push_back({b, a});
                            break;
                        }
                    break;
                }
                r->chosen = (int)r->candidates.size() - 1;
                leftover.erase(std::find(leftover.begin(), leftover.end(), r));
            }
        }
    }

    // Onboard sets per move.
    std::vector<std::map<int, int>> onboard(moves.size());
    for (const Rider& rider : all_riders) {
        auto span = rider.candidates[rider.chosen];
        for (int m = span.first; m <= span.second; ++m) ++onboard[m][rider.request];
    }

    // Timed moves, all after the last release (waiting is free).
    Rat t0(0);
    for (const Request& r : seq.requests) t0 = std::max(t0, r.release);
    std::vector<Rat> depart(moves.size()), arrive(moves.size());
    Rat at = t0;
    auto& tour = sched.tours[0];
    for (int i = 0; i < (int)moves.size(); ++i) {
        Move mv;
        mv.vehicle = 0;
        mv.from = moves[i].first;
        mv.to = moves[i].second;
        mv.length = line.edge_length(std::min(mv.from, mv.to));
        mv.depart = at;
        mv.arrive = at + mv.length / fleet.speed;
        depart[i] = mv.depart;
        arrive[i] = mv.arrive;
        at = mv.arrive;
        for (const auto& [req, cnt] : onboard[i]) mv.onboard.push_back({req, cnt});
        tour.push_back(std::move(mv));
    }

    // Pickup/dropoff events.
    std::map<std::pair<int, int>, int> pick_tally, drop_tally;  // (request, move) -> count
    for (const Rider& rider : all_riders) {
        auto span = rider.candidates[rider.chosen];
        ++pick_tally[{rider.request, span.first}];
        ++drop_tally[{rider.request, span.second}];
    }
    for (const auto& [key, cnt] : pick_tally)
        sched.pickups.push_back({key.first, cnt, tour[key.second].from, depart[key.second]});
    for (const auto& [key, cnt] : drop_tally)
        sched.dropoffs.push_back({key.first, cnt, tour[key.second].to, arrive[key.second]});

    return sched;
}

Rat opt_elevator_cost(const RequestSequence& seq, const Topology& line,
                      const FleetConfig& fleet) {
    auto net = build_flow_network(compute_arc_loads(seq, line, fleet), line);
    if (!net) return Rat(0);
    return solve_min_cost_flow(*net).objective;
}

TransportationSchedule opt_elevator_schedule(const RequestSequence& seq,
                                             const Topology& line,
                                             const FleetConfig& fleet) {
    auto net = build_flow_network(compute_arc_loads(seq, line, fleet), line);
    if (!net) {
        TransportationSchedule empty;
        empty.tours.resize(fleet.vehicles);
        return empty;
    }
    IntegerFlow flow = solve_min_cost_flow(*net);
    return decompose_flow(flow, *net, seq, line, fleet);
}

}  // namespace loopline::elevator
