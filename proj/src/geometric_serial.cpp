#include <cmath>

#include "geometric_common.hpp"

namespace dirac {

GeometricTerm geometric_term_serial(const SurfaceModel& model, const WindowParams& p, double L,
                                    const TraceSettings& settings) {
    model.validate();
    if (!(L > 0)) throw DomainError("thin/thick threshold L must be positive");
    auto ctx = detail::prepare_geometric(model, p, settings);
    std::vector<detail::NodeSum> sums(ctx.grid.nodes.size());
    bool cap_hit = false;
    std::size_t walk_nodes = 0;
    const double prune = std::cosh(ctx.radius + settings.prune_slack);
    for (std::size_t i = 0; i < (ctx.trivial ? 0 : ctx.grid.nodes.size()); ++i) {
        const HPoint z = ctx.grid.nodes[i].z;
        const WalkFrame frame = walk_frame(model.group, z);
        const auto signs = frame.walk_signs(ctx.spin_signs);
        auto& acc = sums[i];
        const auto stats = detail::walk_reduced_words(
            model.group, frame.walk_point, prune, settings.max_word_len, settings.node_budget, signs,
            [&](const detail::Mat2& m, std::span<const Letter>, int chi, double cosh_d) {
                if (cosh_d > ctx.accept_cosh) return;
                detail::accumulate_element(acc, z, detail::conjugate_back(frame, m), chi, ctx);
            });
        cap_hit = cap_hit || stats.cap_hit;
        walk_nodes += stats.nodes;
    }
    auto out = detail::finish_geometric(model, ctx, sums, L);
    out.possibly_incomplete = cap_hit;
    out.walk_nodes = walk_nodes;
    return out;
}

}  // namespace dirac
