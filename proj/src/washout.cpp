#include "surfsim/washout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace surfsim {

void validate(const WashoutParams& p) {
    if (!(p.omega_n > 0.0)) throw std::invalid_argument("washout omega_n must be > 0");
    if (!(p.zeta > 0.0)) throw std::invalid_argument("washout zeta must be > 0");
}

HighPass2::HighPass2(const WashoutParams& p, double dt) {
    validate(p);
    if (!(dt > 0.0)) throw std::invalid_argument("HighPass2: dt must be > 0");
    const double k = 2.0 / dt;
    const double k2 = k * k;
    const double w2 = p.omega_n * p.omega_n;
    const double damp = 2.0 * p.zeta * p.omega_n * k;
    const double a0 = k2 + damp + w2;
    b0_ = k2 / a0;
    b1_ = -2.0 * k2 / a0;
    b2_ = k2 / a0;
    a1_ = (2.0 * w2 - 2.0 * k2) / a0;
    a2_ = (k2 - damp + w2) / a0;
}

double HighPass2::step(double x) {
    const double y = b0_ * x + b1_ * x1_ + b2_ * x2_ - a1_ * y1_ - a2_ * y2_;
    x2_ = x1_;
    x1_ = x;
    y2_ = y1_;
    y1_ = y;
    return y;
}

std::vector<PlatformFrame> washout_baseline(std::span<const KinematicSample> log,
                                            const CueingParams& cueing, const WashoutParams& washout,
                                            double dt) {
    validate(cueing);
    validate(washout);
    HighPass2 surge(washout, dt);
    HighPass2 sway(washout, dt);
    HighPass2 heave(washout, dt);
    CueingPipeline rotational(cueing, dt);
    const ScalingConfig& sc = cueing.scaling;

    std::vector<PlatformFrame> frames;
    frames.reserve(log.size());
    PlatformFrame previous;
    for (const auto& s : log) {
        PlatformFrame r = rotational.step(s).requested;
        r.surge = sc.sf1 * surge.step(s.kin.lin_accel.z);
        r.sway = sc.sf2 * sway.step(s.kin.lin_accel.x);
        r.heave = sc.k_heave * heave.step(s.kin.lin_vel.y);
        previous = compose_frame(r, cueing.envelope, previous, dt, cueing.clamp);
        frames.push_back(previous);
    }
    return frames;
}

long cross_correlation_lag(std::span<const double> a, std::span<const double> b, long max_lag) {
    const long n = static_cast<long>(std::min(a.size(), b.size()));
    long best_lag = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (long mag = 0; mag <= max_lag; ++mag) {
        for (long lag : {mag, -mag}) {
            double c = 0.0;
            for (long i = std::max(0L, -lag); i < n && i + lag < n; ++i) {
                c += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i + lag)];
            }
            if (c > best) {
                best = c;
                best_lag = lag;
            }
            if (mag == 0) break;
        }
    }
    return best_lag;
}

CueingReport compare_streams(std::span<const PlatformFrame> reference,
                             std::span<const PlatformFrame> candidate, const PlatformEnvelope& envelope,
                             double dt, const CompareWindow& window) {
    if (reference.size() != candidate.size()) {
        throw std::invalid_argument("compare_streams: stream lengths differ");
    }
    if (!(window.steady_end > window.steady_start) || !(dt > 0.0)) {
        throw std::invalid_argument("compare_streams: invalid window or dt");
    }
    if (reference.empty() || reference.back().t + 0.5 * dt < window.steady_end) {
        const double covered = reference.empty() ? 0.0 : reference.back().t;
        throw std::invalid_argument("compare_streams: log covers " + std::to_string(covered) +
                                    " s but the steady window ends at " +
                                    std::to_string(window.steady_end) + " s");
    }

    CueingReport rep;
    const long max_lag = std::lround(window.max_lag / dt);
    for (std::size_t k = 0; k < kTranslationalDofs.size(); ++k) {
        std::vector<double> a;
        std::vector<double> b;
        a.reserve(reference.size());
        b.reserve(reference.size());
        // Increments rather than levels: the peak then aligns onsets even when
        // one stream decays and the other holds.
        for (std::size_t i = 1; i < reference.size(); ++i) {
            const Dof d = kTranslationalDofs[k];
            a.push_back(reference[i][d] - reference[i - 1][d]);
            b.push_back(candidate[i][d] - candidate[i - 1][d]);
        }
        rep.onset_lag[k] = static_cast<double>(cross_correlation_lag(a, b, max_lag)) * dt;
    }

    double sum_ref = 0.0;
    double sum_cand = 0.0;
    std::size_t count = 0;
    double end_value = 0.0;
    double best_end_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < reference.size(); ++i) {
        const double t = reference[i].t;
        if (t <= window.steady_end + 0.5 * dt) {
            rep.candidate_peak = std::max(rep.candidate_peak, std::abs(candidate[i].surge));
        }
        if (t >= window.steady_start - 0.5 * dt && t < window.steady_end - 0.5 * dt) {
            sum_ref += std::abs(reference[i].surge);
            sum_cand += std::abs(candidate[i].surge);
            ++count;
        }
        // Last sample before the window closes.
        const double gap = window.steady_end - t;
        if (gap > 0.5 * dt && gap < best_end_gap) {
            best_end_gap = gap;
            end_value = std::abs(candidate[i].surge);
        }
    }
    if (count > 0) {
        rep.reference_steady_mean = sum_ref / static_cast<double>(count);
        rep.candidate_steady_mean = sum_cand / static_cast<double>(count);
    }
    if (rep.candidate_steady_mean > 0.0) {
        rep.steady_ratio = rep.reference_steady_mean / rep.candidate_steady_mean;
    } else if (rep.reference_steady_mean == 0.0) {
        rep.steady_ratio = 1.0;
    }
    rep.candidate_end_fraction = rep.candidate_peak > 0.0 ? end_value / rep.candidate_peak : 0.0;
    rep.envelope_violations = envelope_violations(reference, envelope, dt) +
                              envelope_violations(candidate, envelope, dt);
    return rep;
}

CueingReport compare_cueing(std::span<const KinematicSample> log, const CueingParams& cueing,
                            const WashoutParams& washout, double dt, const CompareWindow& window) {
    std::vector<PlatformFrame> ema;
    ema.reserve(log.size());
    for (const auto& out : run_cueing(log, cueing, dt)) {
        ema.push_back(out.commanded);
    }
    const std::vector<PlatformFrame> wash = washout_baseline(log, cueing, washout, dt);
    return compare_streams(ema, wash, cueing.envelope, dt, window);
}

std::vector<KinematicSample> pulse_kinematics(double level, double pulse, double total, double dt) {
    if (!(dt > 0.0) || !(total > 0.0) || pulse < 0.0) {
        throw std::invalid_argument("pulse_kinematics: invalid timing");
    }
    const auto n = static_cast<std::size_t>(std::llround(total / dt));
    const auto n_pulse = static_cast<std::size_t>(std::llround(pulse / dt));
    std::vector<KinematicSample> out;
    out.reserve(n + 1);
    double v = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        KinematicSample s;
        s.t = static_cast<double>(k) * dt;
        // Sample k carries the acceleration that produced v(t_k) from v(t_{k-1}).
        const double a = (k >= 1 && k <= n_pulse) ? level : 0.0;
        v += a * dt;
        s.kin.lin_accel = {0.0, 0.0, a};
        s.kin.lin_vel = {0.0, 0.0, v};
        out.push_back(s);
    }
    return out;
}

}  // namespace surfsim
