#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "repalign/errors.hpp"
#include "repalign/wiretap.hpp"

namespace repalign {

namespace {

using Dense = Eigen::MatrixXd;

Dense to_dense(const Matrix& m) {
    Dense d(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) d(r, c) = m.approx(r, c);
    }
    if (!d.allFinite()) throw NumericalError("matrix has non-finite entries");
    return d;
}

// sum_i log2(1 + s_i^2 / sigma2) over the singular values of g; equals
// log2 det(I + g g^T / sigma2) without forming the ill-conditioned Gram matrix.
double log2_det(const Dense& g, double noise) {
    const Eigen::VectorXd s = Eigen::BDCSVD<Dense>(g).singularValues();
    double acc = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::log1p(s[i] * s[i] / noise);
    acc /= std::log(2.0);
    if (!std::isfinite(acc)) throw NumericalError("log-determinant is not finite");
    return acc;
}

} // namespace

double secrecy_rate(const ChannelInstance& chan, std::span<const Matrix> v, double power, double noise) {
    if (chan.domain().kind() != DomainKind::floating) throw PreconditionError("secrecy rate needs a float channel");
    if (!(power > 0) || !(noise > 0) || !std::isfinite(power) || !std::isfinite(noise)) {
        throw PreconditionError("secrecy rate needs finite P > 0 and sigma2 > 0");
    }
    if (v.size() != chan.L()) throw DimensionError("expected one beamforming matrix per user");
    const auto side = static_cast<Eigen::Index>(chan.side());
    const auto n = static_cast<Eigen::Index>(chan.N());
    const double scale = std::sqrt(power / static_cast<double>(chan.N()));

    std::vector<Dense> shaped;
    for (const auto& m : v) {
        if (!(m.domain() == chan.domain())) throw DomainMismatchError("beamforming matrix outside the channel's domain");
        if (m.rows() != chan.side() || m.cols() != chan.N()) throw DimensionError("beamforming matrix has wrong shape");
        Eigen::HouseholderQR<Dense> qr(to_dense(m));
        Dense q = qr.householderQ() * Dense::Identity(side, n);
        shaped.push_back(q * scale);
    }

    auto receiver_term = [&](auto&& channel_of) {
        Dense g(side, side);
        for (std::size_t l = 0; l < chan.L(); ++l) {
            g.middleCols(static_cast<Eigen::Index>(l) * n, n) = to_dense(channel_of(l + 1)) * shaped[l];
        }
        return 0.5 * log2_det(g, noise);
    };

    const double legit = receiver_term([&](std::size_t l) -> const Matrix& { return chan.legit(l); });
    double worst = 0;
    for (std::size_t e = 1; e <= chan.eavesdropper_count(); ++e) {
        const double term = receiver_term([&](std::size_t l) -> const Matrix& { return chan.eaves(e, l); });
        worst = e == 1 ? term : std::max(worst, term);
    }
    return std::max(0.0, legit - worst);
}

double empirical_dof(const ChannelInstance& chan, std::span<const Matrix> v, double power, double noise) {
    if (!(power > noise)) throw PreconditionError("empirical S-DoF needs P > sigma2");
    return secrecy_rate(chan, v, power, noise) / (0.5 * std::log2(power / noise));
}

} // namespace repalign
