// Classical washout baseline and the EMA-vs-washout comparison.
//
// The baseline keeps the EMA pipeline's mapping and gains but swaps the EMA
// block on the translational channels for a second-order high-pass
//   H(s) = s^2 / (s^2 + 2 zeta wn s + wn^2)
// discretised with the bilinear transform. A sustained input therefore
// decays back to neutral, which is what the comparison measures.
#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "surfsim/cueing.hpp"

namespace surfsim {

struct WashoutParams {
    double omega_n{1.0};  // rad/s
    double zeta{1.0};

    bool operator==(const WashoutParams&) const = default;
};

void validate(const WashoutParams& params);

/// Discrete second-order high-pass (bilinear transform), zero initial state.
class HighPass2 {
public:
    HighPass2(const WashoutParams& params, double dt);
    double step(double x);

private:
    double b0_, b1_, b2_, a1_, a2_;
    double x1_{0.0}, x2_{0.0}, y1_{0.0}, y2_{0.0};
};

/// Washout command stream for a kinematic log. Surge/sway filter the board
/// acceleration, heave filters the velocity; pitch, roll and yaw follow the
/// EMA pipeline unchanged. Same envelope handling as the EMA pipeline.
std::vector<PlatformFrame> washout_baseline(std::span<const KinematicSample> log,
                                            const CueingParams& cueing, const WashoutParams& washout,
                                            double dt);

struct CompareWindow {
    double steady_start{1.0};  // s, sustained-phase window
    double steady_end{5.0};
    double max_lag{2.0};       // s, cross-correlation search range
};

inline constexpr std::array<Dof, 3> kTranslationalDofs{Dof::surge, Dof::sway, Dof::heave};

struct CueingReport {
    std::array<double, 3> onset_lag{};  // s, candidate relative to reference: surge, sway, heave
    /// mean |reference surge| / mean |candidate surge| over the steady window;
    /// empty when the candidate is identically zero but the reference is not.
    std::optional<double> steady_ratio;
    std::size_t envelope_violations{0};
    double reference_steady_mean{0.0};
    double candidate_steady_mean{0.0};
    double candidate_peak{0.0};            // max |candidate surge| up to steady_end
    double candidate_end_fraction{0.0};    // |candidate surge| at steady_end / candidate_peak
};

/// Lag (in samples) maximizing sum_i a[i] * b[i + lag] over |lag| <= max_lag.
/// Ties resolve toward the smallest |lag|.
long cross_correlation_lag(std::span<const double> a, std::span<const double> b, long max_lag);

/// Compares two command streams sampled at the same instants. Onset lag is
/// the cross-correlation peak of the per-step increments of each DoF.
/// Throws std::invalid_argument on length mismatch or when the streams end
/// before the steady window does.
CueingReport compare_streams(std::span<const PlatformFrame> reference,
                             std::span<const PlatformFrame> candidate, const PlatformEnvelope& envelope,
                             double dt, const CompareWindow& window = {});

/// EMA pipeline (reference) versus washout baseline (candidate).
CueingReport compare_cueing(std::span<const KinematicSample> log, const CueingParams& cueing,
                            const WashoutParams& washout, double dt, const CompareWindow& window = {});

/// Level board accelerated along +z at `level` for `pulse` seconds then held
/// at constant speed until `total`.
std::vector<KinematicSample> pulse_kinematics(double level, double pulse, double total, double dt);

}  // namespace surfsim
