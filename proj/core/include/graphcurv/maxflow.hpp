#pragma once

#include <vector>

namespace graphcurv {

/// Highest-label push-relabel max-flow with the gap heuristic, on double
/// capacities. Deterministic: arcs are scanned in insertion order.
class MaxFlowNetwork {
public:
    explicit MaxFlowNetwork(int num_nodes);

    /// Directed arc with capacity cap plus its residual twin.
    void add_edge(int from, int to, double cap, double reverse_cap = 0.0);

    /// Runs the full algorithm; callable once per network.
    double max_flow(int source, int sink);

    /// After max_flow: nodes reachable from the source in the residual
    /// network (the inclusion-minimal source side of a minimum cut).
    std::vector<char> min_cut_source_side() const;

private:
    struct Arc {
        int to;
        int rev;
        double cap;
    };

    void push(int v, Arc& a);
    void relabel(int v);
    void activate(int v);

    int n_;
    int source_ = -1;
    int sink_ = -1;
    std::vector<std::vector<Arc>> arcs_;
    std::vector<double> excess_;
    std::vector<int> height_;
    std::vector<int> arc_ptr_;
    std::vector<int> height_count_;
    std::vector<std::vector<int>> active_;
    int highest_ = 0;
};

} // namespace graphcurv
