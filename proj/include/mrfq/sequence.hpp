#pragma once

#include <cmath>
#include <stdexcept>

#include "mrfq/common.hpp"
#include "mrfq/schedule.hpp"

namespace mrfq {

/// Tissue relaxation parameters. t2 <= t1 is enforced where sets of params
/// are constructed (phantom, dictionary grid), not here.
struct TissueParams {
    double t1_ms = 0.0;
    double t2_ms = 0.0;
    double df_hz = 0.0;

    void validate() const {
        if (!(t1_ms > 0.0) || !(t2_ms > 0.0))
            throw std::invalid_argument("TissueParams: t1 and t2 must be positive");
    }
};

struct SignalEvolution {
    Eigen::VectorXcd samples;
    bool normalized = false;
};

inline double l2_norm(const Eigen::VectorXcd& v) { return v.norm(); }

/// Scale to unit L2 norm. All-zero input has no direction and raises
/// degenerate_signal_error; the matcher treats such pixels as background.
inline SignalEvolution normalize(const SignalEvolution& evolution) {
    const double norm = evolution.samples.norm();
    if (norm == 0.0)
        throw degenerate_signal_error("normalize: signal evolution is identically zero");
    SignalEvolution out;
    out.samples = evolution.samples / norm;
    out.normalized = true;
    return out;
}

/// IR-bSSFP signal evolution via a stepwise Bloch recursion.
///
/// Conventions (the dictionary and the acquisition both use exactly these):
///   - magnetization starts at (0,0,1); an ideal inversion flips it to (0,0,-1)
///   - pulse i rotates about the y axis by FA(i) degrees with RF phase
///     alternating 180 deg per pulse: sign +1 for even i, -1 for odd i
///   - each TR propagates in two halves of TR/2; transverse magnetization
///     decays by exp(-dt/T2) and precesses by 2 pi df dt about z, longitudinal
///     recovers as Mz -> 1 + (Mz - 1) exp(-dt/T1)
///   - sample i is Mx + i My at the echo, TE = TR(i)/2
///   - magnetization carries over between pulses, never reset
/// When trace is given it receives the magnetization (Mx, My, Mz) after each
/// half-TR propagation: column 2i is the echo of pulse i, column 2i+1 the end
/// of TR i.
inline SignalEvolution simulate_evolution(const TissueParams& params, const Schedule& schedule,
                                          Eigen::Matrix3Xd* trace = nullptr) {
    params.validate();
    const int n = schedule.n_points;
    SignalEvolution out;
    out.samples.resize(n);
    out.normalized = false;
    if (trace) trace->resize(3, 2 * n);

    cplx mxy(0.0, 0.0);
    double mz = -1.0;  // after ideal inversion of (0,0,1)

    const double t1 = params.t1_ms;
    const double t2 = params.t2_ms;
    const double df = params.df_hz;

    for (int i = 0; i < n; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        const double alpha = sign * schedule.flip_angles_deg[static_cast<std::size_t>(i)] * kPi / 180.0;
        const double ca = std::cos(alpha);
        const double sa = std::sin(alpha);

        // Rotation about y: x' = c x + s z, y' = y, z' = -s x + c z.
        const double mx = mxy.real();
        const double my = mxy.imag();
        const double mx2 = ca * mx + sa * mz;
        const double mz2 = -sa * mx + ca * mz;
        mxy = cplx(mx2, my);
        mz = mz2;

        const double dt = schedule.repetition_times_ms[static_cast<std::size_t>(i)] / 2.0;
        const double e1 = std::exp(-dt / t1);
        const double e2 = std::exp(-dt / t2);
        const double phi = 2.0 * kPi * df * (dt / 1000.0);
        const cplx rot(std::cos(phi), std::sin(phi));

        mxy *= e2 * rot;
        mz = 1.0 + (mz - 1.0) * e1;
        out.samples[i] = mxy;
        if (trace) trace->col(2 * i) = Eigen::Vector3d(mxy.real(), mxy.imag(), mz);

        mxy *= e2 * rot;
        mz = 1.0 + (mz - 1.0) * e1;
        if (trace) trace->col(2 * i + 1) = Eigen::Vector3d(mxy.real(), mxy.imag(), mz);
    }
    return out;
}

}  // namespace mrfq
