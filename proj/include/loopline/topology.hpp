#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "loopline/rational.hpp"

namespace loopline {

using NodeId = int;

enum class TopologyKind { Circuit, Line };

// A circuit (one-directional cycle) or line (bidirectional path) with a
// distinguished origin/depot v_0. Nodes are 0..n; edge e joins v_e and
// v_{e+1}, and circuits close the cycle with a final edge v_n -> v_0.
class Topology {
public:
    static Topology circuit(std::vector<Rat> edge_lengths) {
        return Topology(TopologyKind::Circuit, std::move(edge_lengths));
    }
    static Topology line(std::vector<Rat> edge_lengths) {
        return Topology(TopologyKind::Line, std::move(edge_lengths));
    }

    TopologyKind kind() const { return kind_; }
    bool is_circuit() const { return kind_ == TopologyKind::Circuit; }

    int node_count() const {
        return is_circuit() ? (int)lengths_.size() : (int)lengths_.size() + 1;
    }
    int edge_count() const { return (int)lengths_.size(); }
    NodeId origin() const { return 0; }
    NodeId last_node() const { return node_count() - 1; }

    const Rat& edge_length(int e) const { return lengths_.at(e); }
    const std::vector<Rat>& edge_lengths() const { return lengths_; }

    // |C| for circuits, |L| for lines.
    const Rat& total_length() const { return total_; }

    // Distance from v_0 to v along the forward direction.
    const Rat& position(NodeId v) const {
        require_node(v);
        return prefix_[v];
    }

    // Shortest feasible path length. Asymmetric on circuits (forward arcs
    // only), symmetric on lines.
    Rat distance(NodeId u, NodeId v) const {
        require_node(u);
        require_node(v);
        if (u == v) return Rat(0);
        if (is_circuit()) {
            Rat d = prefix_[v] - prefix_[u];
            if (v < u) d += total_;
            return d;
        }
        return u < v ? prefix_[v] - prefix_[u] : prefix_[u] - prefix_[v];
    }

    NodeId next_on_circuit(NodeId v) const {
        require_node(v);
        return v == last_node() ? 0 : v + 1;
    }

    void require_node(NodeId v) const {
        if (v < 0 || v >= node_count())
            throw std::out_of_range("unknown node id " + std::to_string(v));
    }

private:
    Topology(TopologyKind kind, std::vector<Rat> lengths)
        : kind_(kind), lengths_(std::move(lengths)) {
        int min_edges = kind_ == TopologyKind::Circuit ? 2 : 1;
        if ((int)lengths_.size() < min_edges)
            throw std::invalid_argument("topology needs at least two nodes");
        prefix_.reserve(node_count());
        prefix_.push_back(Rat(0));
        for (int v = 1; v < node_count(); ++v)
            prefix_.push_back(prefix_.back() + lengths_[v - 1]);
        total_ = prefix_.back();
        if (is_circuit()) total_ += lengths_.back();
        for (const Rat& l : lengths_)
            if (!(l > Rat(0)))
                throw std::invalid_argument("edge lengths must be positive");
    }

    TopologyKind kind_;
    std::vector<Rat> lengths_;
    std::vector<Rat> prefix_;
    Rat total_;
};

}  // namespace loopline
