#include <algorithm>
#include <cmath>
#include <exception>

#include "geometric_common.hpp"

namespace dirac {

namespace {

struct Cluster {
    std::vector<std::size_t> members;  // sorted by decreasing distance from the centre
    std::vector<double> offsets;       // 2 d(centre, member), same order
    std::size_t centre = 0;
    double spread = 0;  // max distance from the centre
};

std::vector<Cluster> build_clusters(const DomainGrid& grid, bool enabled) {
    std::vector<Cluster> clusters;
    if (!enabled) {
        for (std::size_t i = 0; i < grid.nodes.size(); ++i) clusters.push_back({{i}, {0.0}, i, 0});
        return clusters;
    }
    clusters.resize(grid.cluster_count);
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) clusters[grid.nodes[i].cluster].members.push_back(i);
    std::erase_if(clusters, [](const Cluster& c) { return c.members.empty(); });
    for (auto& c : clusters) {
        // Centre: the member minimising the largest distance to the others.
        double best = INFINITY;
        for (std::size_t i : c.members) {
            double worst = 0;
            for (std::size_t j : c.members) worst = std::max(worst, distance(grid.nodes[i].z, grid.nodes[j].z));
            if (worst < best) {
                best = worst;
                c.centre = i;
            }
        }
        c.spread = best;
        const HPoint zc = grid.nodes[c.centre].z;
        std::stable_sort(c.members.begin(), c.members.end(), [&](std::size_t i, std::size_t j) {
            return distance(zc, grid.nodes[i].z) > distance(zc, grid.nodes[j].z);
        });
        for (std::size_t i : c.members) c.offsets.push_back(2 * distance(zc, grid.nodes[i].z));
    }
    return clusters;
}

}  // namespace

GeometricTerm geometric_term(const SurfaceModel& model, const WindowParams& p, double L,
                             const TraceSettings& settings) {
    model.validate();
    if (!(L > 0)) throw DomainError("thin/thick threshold L must be positive");
    auto ctx = detail::prepare_geometric(model, p, settings);
    std::vector<detail::NodeSum> sums(ctx.grid.nodes.size());
    const auto clusters = build_clusters(ctx.grid, settings.cluster_nodes);

    std::vector<char> cap_hit(clusters.size(), 0);
    std::vector<std::size_t> walk_nodes(clusters.size(), 0);
    std::exception_ptr failure;
    const long n_clusters = static_cast<long>(clusters.size());

    if (!ctx.trivial) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long ci = 0; ci < n_clusters; ++ci) {
            try {
                const auto& cl = clusters[ci];
                const HPoint c = ctx.grid.nodes[cl.centre].z;
                const WalkFrame frame = walk_frame(model.group, c);
                const auto signs = frame.walk_signs(ctx.spin_signs);
                // d(z, g z) >= d(c, g c) - 2 d(c, z): member k can only see g when
                // cosh d(c, g c) <= cosh(radius + offset_k).
                std::vector<double> reach_cosh;
                for (double off : cl.offsets) reach_cosh.push_back(std::cosh(ctx.radius + off) * (1 + 1e-9));
                // Any element within radius of a member is within radius + 2 spread of the centre.
                const double reach = ctx.radius + 2 * cl.spread;
                const double accept = std::cosh(reach) * (1 + 1e-9);
                const double prune = std::cosh(reach + settings.prune_slack);
                const auto stats = detail::walk_reduced_words(
                    model.group, frame.walk_point, prune, settings.max_word_len, settings.node_budget,
                    signs, [&](const detail::Mat2& m, std::span<const Letter>, int chi, double cosh_d) {
                        if (cosh_d > accept) return;
                        const detail::Mat2 g = detail::conjugate_back(frame, m);
                        for (std::size_t k = 0; k < cl.members.size() && cosh_d <= reach_cosh[k]; ++k) {
                            const std::size_t i = cl.members[k];
                            detail::accumulate_element(sums[i], ctx.grid.nodes[i].z, g, chi, ctx);
                        }
                    });
                cap_hit[ci] = stats.cap_hit;
                walk_nodes[ci] = stats.nodes;
            } catch (...) {
#pragma omp critical(dirac_geometric_failure)
                if (!failure) failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);

    auto out = detail::finish_geometric(model, ctx, sums, L);
    out.possibly_incomplete = std::any_of(cap_hit.begin(), cap_hit.end(), [](char c) { return c != 0; });
    for (auto n : walk_nodes) out.walk_nodes += n;
    return out;
}

}  // namespace dirac
