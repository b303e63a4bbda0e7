#include "biphoton/projection.hpp"

#include "biphoton/constants.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/kernels.hpp"
#include "biphoton/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace biphoton {

namespace {

constexpr double surrogate = constants::sinc_decay;

double auto_k_max(const PumpConfig& pump, const DetectionConfig& det) {
    return 8.0 * std::max(1.0 / det.waist, 1.0 / pump.waist);
}

} // namespace

QuadratureSpec default_quadrature(IntegrandKind kind) {
    QuadratureSpec q;
    q.nodes_per_axis = (kind == IntegrandKind::exact) ? 96 : 16;
    return q;
}

void validate(const QuadratureSpec& q, const PumpConfig& pump,
              const DetectionConfig& det) {
    if (q.nodes_per_axis < 8)
        throw config_error("quadrature needs at least 8 nodes per axis");
    if (q.k_max != 0.0) {
        const double floor = 6.0 * std::max(1.0 / det.waist, 1.0 / pump.waist);
        if (q.k_max < floor)
            throw config_error("k_max below 6 * max(1/w_d, 1/w_p); the integrand "
                               "has not decayed at that cutoff");
    }
    if (!(q.adaptive_tol > 0.0)) throw config_error("adaptive tolerance must be positive");
    if (q.max_refinements < 1) throw config_error("max_refinements must be at least 1");
}

double sinc_approx(double x) { return std::exp(-surrogate * std::fabs(x)); }

double sinc_exact(double x) {
    if (std::fabs(x) < 1e-6) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

double detection_mode(const vec2& q, double w_d) {
    return std::exp(-w_d * w_d * norm_sq(q) / 4.0);
}

double pump_envelope(const vec2& u, double w_p) {
    return std::exp(-w_p * w_p * norm_sq(u) / 4.0);
}

std::complex<double> mode_function(const DispersionModel& m, const CrystalConfig& c,
                                   const PumpConfig& pump, double Omega,
                                   const MomentumPair& k, double T) {
    const double dk = phase_mismatch(m, c, pump, Omega, k, T);
    const double x = dk * c.length / 2.0;
    const vec2 sum{k.p[0] + k.q[0], k.p[1] + k.q[1]};
    return pump_envelope(sum, pump.waist) * sinc_exact(x) *
           std::complex<double>(std::cos(x), -std::sin(x));
}

// ---- approximated integrand: factorized radial quadrature ----

namespace {

struct Geometry {
    double w_p, w_d, L, k0p, F, b, T0;
    double w_opt_sq;
    double pref; // w_p w_d^2 / (2 pi)^(3/2)
};

Geometry make_geometry(const PumpConfig& pump, const DetectionConfig& det,
                       const CrystalConfig& crystal, const DispersionModel& model) {
    Geometry g;
    g.w_p = pump.waist;
    g.w_d = det.waist;
    g.L = crystal.length;
    const double omega_p = 2.0 * M_PI * constants::c_light / pump.center_wavelength;
    g.k0p = omega_p * model.n0_pump / constants::c_light;
    double F = model.walkoff_F();
    if (F == 0.0)
        throw config_error("group slownesses are equal; the longitudinal kernel "
                           "has no detuning dependence to resolve");
    if (F < 0.0) F = -F; // relabel signal<->idler internally so F > 0
    g.F = F;
    g.b = model.thermal_detuning_b;
    g.T0 = crystal.T0;
    g.w_opt_sq = 2.0 * surrogate * g.L / g.k0p;
    g.pref = g.w_p * g.w_d * g.w_d / std::pow(2.0 * M_PI, 1.5);
    return g;
}

// pump-sector radial integral: d2u = pi ds over e^{-a s} e^{i b_ph s}
std::complex<double> u_integral(const Geometry& g, double smax, int n,
                                PanelNodes& buf) {
    const double a = g.w_p * g.w_p / 4.0 + g.w_d * g.w_d / 8.0;
    const double bph = g.L / (4.0 * g.k0p);
    panel_nodes(0.0, smax, a, bph, n, buf);
    const std::size_t m = buf.s.size();
    std::vector<double> ge(m), ph(m);
    for (std::size_t i = 0; i < m; ++i) {
        ge[i] = -a * buf.s[i];
        ph[i] = bph * buf.s[i];
    }
    return M_PI * kernels::weighted_cexp_sum(ge.data(), ph.data(), buf.w.data(), m);
}

// kernel-sector radial integral at effective detuning Om (d2v = pi ds).
// The integrand carries each factor verbatim: detection Gaussian, surrogate
// kernel magnitude, kernel phase, exit-face phase.  The |mismatch| kink at
// s = -2 k0p F Om splits the panel run.
std::complex<double> v_integral(const Geometry& g, double Om, double smax, int n,
                                PanelNodes& buf, std::vector<double>& ge,
                                std::vector<double>& ph) {
    const double decay = g.w_d * g.w_d / 8.0 + g.w_opt_sq / 8.0;
    const double sk = -2.0 * g.k0p * g.F * Om;
    const double wd2_8 = g.w_d * g.w_d / 8.0;
    const double half_L = g.L / 2.0;
    const double exit_rate = g.L / (4.0 * g.k0p);

    std::complex<double> total = 0.0;
    const bool split = sk > 0.0 && sk < smax;
    const double edges[3] = {0.0, split ? sk : smax, smax};
    const int nseg = split ? 2 : 1;
    for (int seg = 0; seg < nseg; ++seg) {
        panel_nodes(edges[seg], edges[seg + 1], decay, 0.0, n, buf);
        const std::size_t m = buf.s.size();
        ge.resize(m);
        ph.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double s = buf.s[i];
            const double mis = g.F * Om + s / (2.0 * g.k0p);
            ge[i] = -wd2_8 * s - surrogate * half_L * std::fabs(mis);
            ph[i] = -half_L * mis + exit_rate * s;
        }
        total += kernels::weighted_cexp_sum(ge.data(), ph.data(), buf.w.data(), m);
    }
    return M_PI * total;
}

void project_approximated(const Geometry& g, const std::vector<double>& omega_grid,
                          double T, double smax, int n,
                          std::vector<std::complex<double>>& out) {
    PanelNodes buf;
    std::vector<double> ge, ph;
    const std::complex<double> Iu = u_integral(g, smax, n, buf);
    const double shift = (g.b / g.F) * (T - g.T0);
    out.resize(omega_grid.size());
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        const double Om_eff = omega_grid[i] + shift;
        out[i] = g.pref * 0.25 * Iu * v_integral(g, Om_eff, smax, n, buf, ge, ph);
    }
}

// ---- exact integrand ----

// per-detuning longitudinal wavenumbers (collinear part)
struct BranchK {
    double kp, ks, ki;
    bool formula; // linearized: use the closed-form mismatch instead
    double F, b, T0, k0p;
};

BranchK branch_k(const Geometry& g, const DispersionModel& model,
                 const CrystalConfig& crystal, const PumpConfig& pump, double Om,
                 double T) {
    BranchK bk{};
    bk.formula = model.mode == DispersionMode::linearized;
    bk.F = model.walkoff_F() < 0 ? -model.walkoff_F() : model.walkoff_F();
    bk.b = model.thermal_detuning_b;
    bk.T0 = crystal.T0;
    bk.k0p = g.k0p;
    if (!bk.formula) {
        const double omega_p = 2.0 * M_PI * constants::c_light / pump.center_wavelength;
        const double om_s = 0.5 * omega_p + Om, om_i = 0.5 * omega_p - Om;
        bk.kp = omega_p * index_y(2.0 * M_PI * constants::c_light / omega_p, T) /
                constants::c_light;
        bk.ks = om_s * index_y(2.0 * M_PI * constants::c_light / om_s, T) /
                constants::c_light;
        bk.ki = om_i * index_z(2.0 * M_PI * constants::c_light / om_i, T) /
                constants::c_light;
    }
    return bk;
}

// longitudinal mismatch at squared transverse magnitudes; ok=false marks an
// evanescent corner (weight is clipped to zero there)
inline bool mismatch_sq(const BranchK& bk, double inv_poling_term, double Om,
                        double T, double sp, double sq, double u2, double vsq,
                        double* dk) {
    if (bk.formula) {
        *dk = bk.b * (T - bk.T0) + bk.F * Om + vsq / (2.0 * bk.k0p);
        return true;
    }
    const double rp = bk.kp * bk.kp - u2;
    const double rs = bk.ks * bk.ks - sp;
    const double ri = bk.ki * bk.ki - sq;
    if (!(rp > 0.0) || !(rs > 0.0) || !(ri > 0.0)) return false;
    *dk = std::sqrt(rp) - std::sqrt(rs) - std::sqrt(ri) - inv_poling_term;
    return true;
}

void project_exact_3d(const Geometry& g, const DispersionModel& model,
                      const CrystalConfig& crystal, const PumpConfig& pump,
                      const std::vector<double>& omega_grid, double T, int n,
                      bool surrogate_kernel,
                      std::vector<std::complex<double>>& out) {
    // radial domain: detection sets the Gaussian support, the kernel kink of
    // the most detuned grid point sets how far the |mismatch| structure reaches
    double om_absmax = 0.0;
    for (double om : omega_grid) om_absmax = std::max(om_absmax, std::fabs(om));
    const double vk2 = 2.0 * g.k0p * g.F * om_absmax;
    const double smax = std::max(64.0 / (g.w_d * g.w_d), 0.5 * vk2);

    const GLRule& rule = gauss_legendre(n);
    const std::size_t ns = static_cast<std::size_t>(n);
    std::vector<double> s(ns), wr(ns), th_c(ns), wth(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        s[i] = (rule.x[i] + 1.0) * smax / 2.0;
        wr[i] = rule.w[i] * smax / 2.0;
        th_c[i] = std::cos((rule.x[i] + 1.0) * M_PI / 2.0);
        wth[i] = rule.w[i] * M_PI / 2.0;
    }

    const double half_L = g.L / 2.0;
    const double exit_rate = g.L / (2.0 * g.k0p);
    const double wp2_4 = g.w_p * g.w_p / 4.0, wd2_4 = g.w_d * g.w_d / 4.0;

    std::vector<double> row_x(ns), row_g(ns), row_ph(ns), row_w(ns);
    out.resize(omega_grid.size());

    for (std::size_t io = 0; io < omega_grid.size(); ++io) {
        const double Om = omega_grid[io];
        const BranchK bk = branch_k(g, model, crystal, pump, Om, T);
        const double inv_poling = bk.formula
                                      ? 0.0
                                      : 2.0 * M_PI / crystal.poling_period(T);
        std::complex<double> acc = 0.0;
        for (std::size_t it = 0; it < ns; ++it) {
            const double ct = th_c[it];
            for (std::size_t ip = 0; ip < ns; ++ip) {
                const double sp = s[ip];
                // row over s_q: fill kernel inputs, then one fused reduction
                for (std::size_t iq = 0; iq < ns; ++iq) {
                    const double sq = s[iq];
                    const double cross = 2.0 * std::sqrt(sp * sq) * ct;
                    const double u2 = sp + sq + cross;
                    const double vsq = sp + sq - cross;
                    double dk = 0.0;
                    const bool ok =
                        mismatch_sq(bk, inv_poling, Om, T, sp, sq, u2, vsq, &dk);
                    const double x = dk * half_L;
                    row_x[iq] = ok ? x : 0.0;
                    row_w[iq] = ok ? wr[ip] * wr[iq] * wth[it] : 0.0;
                    double gexp = -wp2_4 * u2 - wd2_4 * (sp + sq);
                    if (surrogate_kernel) gexp -= surrogate * std::fabs(x);
                    row_g[iq] = ok ? gexp : 0.0;
                    row_ph[iq] = ok ? -x + exit_rate * (sp + sq) : 0.0;
                }
                acc += surrogate_kernel
                           ? kernels::weighted_cexp_sum(row_g.data(), row_ph.data(),
                                                        row_w.data(), ns)
                           : kernels::sinc_weighted_cexp_sum(row_x.data(), row_g.data(),
                                                             row_ph.data(), row_w.data(),
                                                             ns);
            }
        }
        out[io] = g.pref * M_PI * acc;
    }
}

void project_exact_4d(const Geometry& g, const DispersionModel& model,
                      const CrystalConfig& crystal, const PumpConfig& pump,
                      const std::vector<double>& omega_grid, double T, int n,
                      double kmax, bool surrogate_kernel,
                      std::vector<std::complex<double>>& out) {
    const GLRule& rule = gauss_legendre(n);
    const std::size_t ns = static_cast<std::size_t>(n);
    std::vector<double> k(ns), wk(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        k[i] = rule.x[i] * kmax;
        wk[i] = rule.w[i] * kmax;
    }

    const double half_L = g.L / 2.0;
    const double exit_rate = g.L / (2.0 * g.k0p);
    const double wp2_4 = g.w_p * g.w_p / 4.0, wd2_4 = g.w_d * g.w_d / 4.0;

    std::vector<double> row_x(ns), row_g(ns), row_ph(ns), row_w(ns);
    out.resize(omega_grid.size());

    for (std::size_t io = 0; io < omega_grid.size(); ++io) {
        const double Om = omega_grid[io];
        const BranchK bk = branch_k(g, model, crystal, pump, Om, T);
        const double inv_poling = bk.formula
                                      ? 0.0
                                      : 2.0 * M_PI / crystal.poling_period(T);
        std::complex<double> acc = 0.0;
        for (std::size_t a = 0; a < ns; ++a) {       // p_x
            for (std::size_t bidx = 0; bidx < ns; ++bidx) { // p_y
                const double px = k[a], py = k[bidx];
                const double sp = px * px + py * py;
                for (std::size_t c = 0; c < ns; ++c) { // q_x
                    const double qx = k[c];
                    const double w3 = wk[a] * wk[bidx] * wk[c];
                    for (std::size_t d = 0; d < ns; ++d) { // q_y row
                        const double qy = k[d];
                        const double sq = qx * qx + qy * qy;
                        const double ux = px + qx, uy = py + qy;
                        const double u2 = ux * ux + uy * uy;
                        const double vx = px - qx, vy = py - qy;
                        const double vsq = vx * vx + vy * vy;
                        double dk = 0.0;
                        const bool ok = mismatch_sq(bk, inv_poling, Om, T, sp, sq,
                                                    u2, vsq, &dk);
                        const double x = dk * half_L;
                        row_x[d] = ok ? x : 0.0;
                        row_w[d] = ok ? w3 * wk[d] : 0.0;
                        double gexp = -wp2_4 * u2 - wd2_4 * (sp + sq);
                        if (surrogate_kernel) gexp -= surrogate * std::fabs(x);
                        row_g[d] = ok ? gexp : 0.0;
                        row_ph[d] = ok ? -x + exit_rate * (sp + sq) : 0.0;
                    }
                    acc += surrogate_kernel
                               ? kernels::weighted_cexp_sum(row_g.data(), row_ph.data(),
                                                            row_w.data(), ns)
                               : kernels::sinc_weighted_cexp_sum(
                                     row_x.data(), row_g.data(), row_ph.data(),
                                     row_w.data(), ns);
                }
            }
        }
        out[io] = g.pref * acc;
    }
}

void project_once(const Geometry& g, const DispersionModel& model,
                  const CrystalConfig& crystal, const PumpConfig& pump,
                  const DetectionConfig& det, const std::vector<double>& omega_grid,
                  double T, const QuadratureSpec& quad, IntegrandKind kind, int order,
                  std::vector<std::complex<double>>& out) {
    const double kmax = quad.k_max != 0.0 ? quad.k_max : auto_k_max(pump, det);
    if (kind == IntegrandKind::approximated) {
        project_approximated(g, omega_grid, T, kmax * kmax, order, out);
    } else if (quad.reduction == QuadReduction::azimuthal_3d) {
        project_exact_3d(g, model, crystal, pump, omega_grid, T, order,
                         quad.surrogate_longitudinal, out);
    } else {
        project_exact_4d(g, model, crystal, pump, omega_grid, T, order, kmax,
                         quad.surrogate_longitudinal, out);
    }
}

double peak_rel_change(const std::vector<std::complex<double>>& a,
                       const std::vector<std::complex<double>>& b,
                       std::size_t* worst_index) {
    double peak = 0.0, diff = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        peak = std::max(peak, std::abs(b[i]));
        const double d = std::abs(b[i] - a[i]);
        if (d > diff) {
            diff = d;
            worst = i;
        }
    }
    if (worst_index) *worst_index = worst;
    if (peak == 0.0) return 0.0;
    return diff / peak;
}

} // namespace

SpectralWavefunction project_spectrum(const std::vector<double>& omega_grid, double T,
                                      const PumpConfig& pump, const DetectionConfig& det,
                                      const CrystalConfig& crystal,
                                      const DispersionModel& model,
                                      const QuadratureSpec& quad, IntegrandKind kind) {
    validate(pump);
    validate(det);
    validate(crystal);
    validate(model);
    validate(quad, pump, det);
    grid_spacing(omega_grid); // uniform + increasing, or throws

    const Geometry g = make_geometry(pump, det, crystal, model);

    SpectralWavefunction s;
    s.omega_grid = omega_grid;
    s.T = T;
    s.meta.w_p = pump.waist;
    s.meta.w_d = det.waist;
    s.meta.model = (kind == IntegrandKind::approximated) ? "numeric-approx" : "numeric-exact";

    if (quad.scheme == QuadScheme::tensor_gauss) {
        project_once(g, model, crystal, pump, det, omega_grid, T, quad, kind,
                     quad.nodes_per_axis, s.values);
        return s;
    }

    // adaptive: double the order until the spectrum stops moving
    int order = quad.nodes_per_axis;
    std::vector<std::complex<double>> prev, cur;
    std::size_t worst = 0;
    double change = 0.0;
    project_once(g, model, crystal, pump, det, omega_grid, T, quad, kind, order, prev);
    for (int r = 0; r < quad.max_refinements; ++r) {
        order *= 2;
        project_once(g, model, crystal, pump, det, omega_grid, T, quad, kind, order, cur);
        change = peak_rel_change(prev, cur, &worst);
        if (change < quad.adaptive_tol) {
            s.values = std::move(cur);
            return s;
        }
        prev = std::move(cur);
    }
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "adaptive quadrature did not settle: peak-relative change %.3g "
                  "above tolerance %.3g at Omega = %.6g rad/s",
                  change, quad.adaptive_tol, omega_grid[worst]);
    throw convergence_error(msg);
}

} // namespace biphoton
