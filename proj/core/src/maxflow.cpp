#include "graphcurv/maxflow.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace graphcurv {

MaxFlowNetwork::MaxFlowNetwork(int num_nodes) : n_(num_nodes), arcs_(num_nodes) {}

void MaxFlowNetwork::add_edge(int from, int to, double cap, double reverse_cap) {
    Arc fwd{to, static_cast<int>(arcs_[to].size()), cap};
    Arc bwd{from, static_cast<int>(arcs_[from].size()), reverse_cap};
    arcs_[from].push_back(fwd);
    arcs_[to].push_back(bwd);
}

void MaxFlowNetwork::activate(int v) {
    if (v == source_ || v == sink_) return;
    if (excess_[v] <= 0.0) return;
    active_[height_[v]].push_back(v);
    highest_ = std::max(highest_, height_[v]);
}

void MaxFlowNetwork::push(int v, Arc& a) {
    const double delta = std::min(excess_[v], a.cap);
    a.cap -= delta;
    arcs_[a.to][a.rev].cap += delta;
    excess_[v] -= delta;
    const bool was_inactive = excess_[a.to] <= 0.0;
    excess_[a.to] += delta;
    if (was_inactive) activate(a.to);
}

void MaxFlowNetwork::relabel(int v) {
    int best = 2 * n_;
    for (const Arc& a : arcs_[v])
        if (a.cap > 0.0) best = std::min(best, height_[a.to] + 1);
    const int old = height_[v];
    --height_count_[old];
    height_[v] = best;
    if (best < 2 * n_) ++height_count_[best];
    // Gap heuristic: no node left at `old` means everything strictly
    // above (below n) is cut off from the sink.
    if (height_count_[old] == 0 && old < n_) {
        for (int u = 0; u < n_; ++u)
            if (u != source_ && height_[u] > old && height_[u] < n_) {
                --height_count_[height_[u]];
                height_[u] = n_ + 1;
            }
    }
    arc_ptr_[v] = 0;
}

double MaxFlowNetwork::max_flow(int source, int sink) {
    source_ = source;
    sink_ = sink;
    excess_.assign(n_, 0.0);
    height_.assign(n_, 0);
    arc_ptr_.assign(n_, 0);
    height_count_.assign(2 * n_ + 1, 0);
    active_.assign(2 * n_ + 1, {});
    highest_ = 0;

    height_[source] = n_;
    height_count_[0] = n_ - 1;
    height_count_[n_] = 1;

    for (Arc& a : arcs_[source]) {
        if (a.cap > 0.0) {
            excess_[source] += a.cap;
            push(source, a);
        }
    }

    while (highest_ >= 0) {
        if (active_[highest_].empty()) {
            --highest_;
            continue;
        }
        const int v = active_[highest_].back();
        active_[highest_].pop_back();
        if (excess_[v] <= 0.0 || height_[v] != highest_) continue;

        while (excess_[v] > 0.0) {
            if (arc_ptr_[v] == static_cast<int>(arcs_[v].size())) {
                relabel(v);
                if (height_[v] >= 2 * n_) break;  // no outlet left
                break;                            // re-queue at the new height
            }
            Arc& a = arcs_[v][arc_ptr_[v]];
            if (a.cap > 0.0 && height_[v] == height_[a.to] + 1)
                push(v, a);
            else
                ++arc_ptr_[v];
        }
        if (excess_[v] > 0.0 && height_[v] < 2 * n_) activate(v);
    }
    return excess_[sink];
}

std::vector<char> MaxFlowNetwork::min_cut_source_side() const {
    std::vector<char> side(n_, 0);
    std::deque<int> queue{source_};
    side[source_] = 1;
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (const Arc& a : arcs_[v])
            if (a.cap > 0.0 && !side[a.to]) {
                side[a.to] = 1;
                queue.push_back(a.to);
            }
    }
    return side;
}

} // namespace graphcurv
