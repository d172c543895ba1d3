#include "decay/bound_kind.hpp"

#include <cmath>

#include "decay/error.hpp"

namespace decay {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

DecayBoundReport scalar_report(double d, double value) {
    DecayBoundReport r;
    r.distance = d;
    r.value = value;
    return r;
}

}  // namespace

std::string describe(const BoundKind& kind) {
    return std::visit(Overloaded{
                          [](const ExpKernel& k) { return "exp(tau=" + std::to_string(k.tau) + ")"; },
                          [](const DemkoKernel&) { return std::string("demko"); },
                          [](const FreundKernel& k) { return "freund(zeta=" + std::to_string(k.zeta) + ")"; },
                          [](const LaplaceKernel& k) { return "laplace:" + k.measure.name; },
                          [](const CauchyKernel& k) { return "cauchy:" + k.measure.name; },
                          [](const CauchyShiftedKernel& k) {
                              return "cauchy-shifted:" + k.measure.name + "(zeta=" + std::to_string(k.zeta) + ")";
                          },
                          [](const InvSqrtClosedKernel&) { return std::string("invsqrt-closed"); },
                      },
                      kind);
}

bool bound_applicable(const BoundKind& kind, const BoundContext& context, double d) {
    if (!(d >= 0.0) || std::isinf(d)) return false;
    const bool off_diagonal = d > 0.0;
    const bool pd = context.spectrum.lambda_min() > 0.0;
    const bool spread = context.spectrum.lambda_max() > context.spectrum.lambda_min();
    return std::visit(Overloaded{
                          [&](const ExpKernel&) { return off_diagonal; },
                          [&](const DemkoKernel&) { return pd; },
                          [&](const FreundKernel&) { return off_diagonal && spread; },
                          [&](const LaplaceKernel&) {
                              return pd && (context.options.validity == Validity::extended || d >= 2.0);
                          },
                          [&](const CauchyKernel&) { return pd; },
                          [&](const CauchyShiftedKernel&) { return off_diagonal && spread; },
                          [&](const InvSqrtClosedKernel&) { return pd && off_diagonal; },
                      },
                      kind);
}

DecayBoundReport evaluate_bound(const BoundKind& kind, const BoundContext& context, double d) {
    const SpectralInterval& spec = context.spectrum;
    const BoundOptions& opt = context.options;
    return std::visit(
        Overloaded{
            [&](const ExpKernel& k) { return scalar_report(d, exp_entry_bound(spec, k.tau, d)); },
            [&](const DemkoKernel&) { return scalar_report(d, demko_bound(spec, d, context.diagonal_scale)); },
            [&](const FreundKernel& k) { return scalar_report(d, freund_resolvent_bound(spec, k.zeta, d)); },
            [&](const LaplaceKernel& k) { return laplace_entry_bound(spec, k.measure, d, opt); },
            [&](const CauchyKernel& k) { return cauchy_entry_bound(spec, k.measure, d, opt); },
            [&](const CauchyShiftedKernel& k) { return cauchy_shifted_bound(spec, k.measure, k.zeta, d, opt); },
            [&](const InvSqrtClosedKernel&) {
                return scalar_report(d, invsqrt_closed_bound(spec, d, context.diagonal_scale));
            },
        },
        kind);
}

std::vector<DecayBoundReport> bound_with_distance(const BoundKind& kind, const BoundContext& context,
                                                  const DistanceVector& dist) {
    std::vector<DecayBoundReport> out;
    out.reserve(dist.size());
    for (Index j = 1; j <= dist.size(); ++j) {
        DecayBoundReport r;
        if (!dist.reachable(j)) {
            r.distance = std::numeric_limits<double>::infinity();
            r.unreachable = true;
            r.valid = false;
        } else if (const double d = dist(j); bound_applicable(kind, context, d)) {
            r = evaluate_bound(kind, context, d);
        } else {
            r.distance = d;
            r.valid = false;
        }
        r.row = j;
        r.column = dist.source;
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace decay
