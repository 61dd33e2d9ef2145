#include "hmhd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hmhd/kernels.hpp"

namespace hmhd {

namespace {
const double box_volume = 8.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;
}

ShellDecomposition::ShellDecomposition(GridPtr g) : grid_(std::move(g)) {
    const int n = grid_->n();
    shell_of_.resize(grid_->size());
    auto k2 = grid_->k2();
    int jmax = 0;
    for (std::size_t i = 0; i < shell_of_.size(); ++i) {
        const long long k2i = static_cast<long long>(k2[i]);
        if (k2i == 0) {
            shell_of_[i] = 0;
            continue;
        }
        // smallest j with 4^j > |k|^2, i.e. 2^{j-1} <= |k| < 2^j
        int j = 0;
        while ((1LL << (2 * j)) <= k2i) ++j;
        shell_of_[i] = static_cast<std::int16_t>(j);
        jmax = std::max(jmax, j);
    }
    num_shells_ = jmax;
    (void)n;
}

SpectralField ShellDecomposition::restrict_to(const SpectralField& f, int j) const {
    require_same_grid(f.grid(), *grid_);
    SpectralField out(f.grid_ptr());
    auto src = f.coeffs();
    auto dst = out.coeffs();
    for (std::size_t i = 0; i < src.size(); ++i)
        if (shell_of_[i] == j) dst[i] = src[i];
    return out;
}

double ShellDecomposition::operator_l1_bound() const {
    double worst = 0.0;
    for (int j = 1; j <= num_shells_; ++j) {
        SpectralField mask(grid_);
        auto c = mask.coeffs();
        for (std::size_t i = 0; i < c.size(); ++i)
            if (shell_of_[i] == j) c[i] = 1.0;
        aligned_vector<double> kernel = to_physical(mask);
        worst = std::max(worst, kernels::abs_sum(kernel) / double(grid_->size()));
    }
    return worst;
}

double sobolev_norm(const SpectralField& f, int m) {
    if (m < 0) throw std::invalid_argument("sobolev_norm: m must be >= 0");
    auto k2 = f.grid().k2();
    aligned_vector<double> w(k2.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(w.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) w[i] = std::pow(1.0 + k2[i], m);
    return std::sqrt(kernels::weighted_abs2_sum(f.coeffs(), w) * box_volume);
}

double sobolev_norm(const VectorField& v, int m) {
    if (m < 0) throw std::invalid_argument("sobolev_norm: m must be >= 0");
    auto k2 = v.grid().k2();
    aligned_vector<double> w(k2.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(w.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) w[i] = std::pow(1.0 + k2[i], m);
    double s = 0.0;
    for (int c = 0; c < 3; ++c)
        s += kernels::weighted_abs2_sum(v.comp(c).coeffs(), w);
    return std::sqrt(s * box_volume);
}

double l2_norm(const SpectralField& f) {
    return std::sqrt(kernels::abs2_sum(f.coeffs()) * box_volume);
}

double l2_norm(const VectorField& v) {
    double s = 0.0;
    for (int c = 0; c < 3; ++c) s += kernels::abs2_sum(v.comp(c).coeffs());
    return std::sqrt(s * box_volume);
}

double linf_norm(const SpectralField& f) {
    return kernels::max_abs(to_physical(f));
}

double linf_norm(const VectorField& v) {
    aligned_vector<double> px, py, pz;
    to_physical3(v, px, py, pz);
    return std::max({kernels::max_abs(px), kernels::max_abs(py), kernels::max_abs(pz)});
}

double grad_linf(const VectorField& v) {
    double worst = 0.0;
    int bad = 0;
#pragma omp parallel for collapse(2) schedule(dynamic) reduction(max : worst) reduction(| : bad)
    for (int c = 0; c < 3; ++c)
        for (int j = 0; j < 3; ++j) {
            try {
                worst = std::max(worst, kernels::max_abs(derivative_physical(v.comp(c), j)));
            } catch (const std::exception&) {
                bad |= 1;
            }
        }
    if (bad) throw std::runtime_error("grad_linf: corrupted state");
    return worst;
}

double besov_norm_b0(const SpectralField& f) {
    ShellDecomposition shells(f.grid_ptr());
    double worst = 0.0;
    for (int j = 1; j <= shells.num_shells(); ++j)
        worst = std::max(worst, linf_norm(shells.restrict_to(f, j)));
    return worst;
}

double functional_X(const State& s, int m) {
    if (m <= 2) throw std::invalid_argument("functional_X: requires m >= 3");
    const double hu = sobolev_norm(s.u, m);
    const double hb = sobolev_norm(s.b, m);
    return 1.0 + hb * hb + hu * hu;
}

double functional_A(const State& s) {
    VectorField omega = curl(s.u);
    double besov = 0.0;
    for (int c = 0; c < 3; ++c)
        besov = std::max(besov, besov_norm_b0(omega.comp(c)));
    const double lu = linf_norm(s.u);
    const double lb = linf_norm(s.b);
    const double lgb = grad_linf(s.b);
    const double quotient =
        (1.0 + lu * lu + lb * lb + lgb * lgb) / (1.0 + std::log(1.0 + lu + lb + lgb));
    return besov + quotient;
}

double divergence_linf(const VectorField& v) {
    return linf_norm(divergence(v));
}

SpectralField pressure_recover(const VectorField& u, const VectorField& b) {
    require_same_grid(u.grid(), b.grid());
    const GridPtr& g = u.grid_ptr();
    aligned_vector<double> ux, uy, uz, bx, by, bz;
    to_physical3(u, ux, uy, uz);
    to_physical3(b, bx, by, bz);
    const std::span<const double> up[3] = {ux, uy, uz};
    const std::span<const double> bp[3] = {bx, by, bz};

    // q = p + |B|^2/2 from |k|^2 q^ = -sum_{j,l} k_j k_l T^_jl, T = u (x) u - B (x) B
    SpectralField q(g);
    aligned_vector<double> prod(g->size());
    const int n = g->n();
    for (int j = 0; j < 3; ++j)
        for (int l = j; l < 3; ++l) {
            for (std::size_t i = 0; i < prod.size(); ++i)
                prod[i] = up[j][i] * up[l][i] - bp[j][i] * bp[l][i];
            SpectralField t_jl = dealias(from_physical(g, prod));
            const double factor = j == l ? 1.0 : 2.0;
            auto tc = t_jl.coeffs();
            auto qc = q.coeffs();
            std::size_t i = 0;
            for (int ix = 0; ix < n; ++ix)
                for (int iy = 0; iy < n; ++iy)
                    for (int iz = 0; iz < n; ++iz, ++i) {
                        const double kj = j == 0 ? g->wavenumber(ix)
                                                 : (j == 1 ? g->wavenumber(iy) : g->wavenumber(iz));
                        const double kl = l == 0 ? g->wavenumber(ix)
                                                 : (l == 1 ? g->wavenumber(iy) : g->wavenumber(iz));
                        const double k2 = g->k2()[i];
                        if (k2 == 0.0) continue;
                        qc[i] += -factor * kj * kl * tc[i] / k2;
                    }
        }

    // p = q - |B|^2/2, mean removed
    for (std::size_t i = 0; i < prod.size(); ++i)
        prod[i] = 0.5 * (bx[i] * bx[i] + by[i] * by[i] + bz[i] * bz[i]);
    SpectralField b2half = dealias(from_physical(g, prod));
    SpectralField p = q;
    p -= b2half;
    p.at(0, 0, 0) = 0.0;
    return p;
}

std::pair<double, double> stationary_residual(const VectorField& u,
                                              const VectorField& b,
                                              const PhysParams& p) {
    require_same_grid(u.grid(), b.grid());
    const GridPtr& g = u.grid_ptr();

    VectorField res_u = advection_term(u);
    res_u -= lorentz_term(b);
    leray_project_inplace(res_u);
    // - nu Lap u  = + nu |k|^2 u
    auto k2 = g->k2();
    aligned_vector<double> w(k2.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = p.nu * k2[i];
    for (int c = 0; c < 3; ++c)
        kernels::axpy_multiplier(res_u.comp(c).coeffs(), w, u.comp(c).coeffs());

    VectorField res_b = hall_term(b);
    res_b -= induction_term(u, b);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = k2[i];
    for (int c = 0; c < 3; ++c)
        kernels::axpy_multiplier(res_b.comp(c).coeffs(), w, b.comp(c).coeffs());

    return {l2_norm(res_u), l2_norm(res_b)};
}

Recorder::Recorder(GridPtr g, int m, PhysParams p, EvolveMode mode)
    : grid_(g), m_(m), params_(p), shells_(g) {
    if (m_ <= 2) throw std::invalid_argument("Recorder: requires m >= 3");
    params_.validate();
    auto k2 = grid_->k2();
    hm_weight_.resize(k2.size());
    diss_weight_u_.resize(k2.size());
    diss_weight_b_.resize(k2.size());
    const double h = params_.eps * params_.eps;
    for (std::size_t i = 0; i < k2.size(); ++i) {
        hm_weight_[i] = std::pow(1.0 + k2[i], m_);
        const double moll2 = params_.eps == 0.0 ? 1.0 : std::exp(-h * k2[i]);
        if (mode == EvolveMode::generalized_hall) {
            diss_weight_u_[i] = 0.0;
            diss_weight_b_[i] = k2[i] == 0.0 ? 0.0 : std::pow(k2[i], 0.5 * params_.beta);
        } else {
            diss_weight_u_[i] = params_.nu * k2[i] * moll2;
            diss_weight_b_[i] = params_.eta * k2[i] * moll2;
        }
    }
}

const DiagnosticsRecord& Recorder::sample(const State& s) {
    DiagnosticsRecord r;
    r.t = s.t;

    double eu = 0.0, eb = 0.0, hu2 = 0.0, hb2 = 0.0, gu = 0.0, gb = 0.0;
    for (int c = 0; c < 3; ++c) {
        auto uc = s.u.comp(c).coeffs();
        auto bc = s.b.comp(c).coeffs();
        eu += kernels::abs2_sum(uc);
        eb += kernels::abs2_sum(bc);
        hu2 += kernels::weighted_abs2_sum(uc, hm_weight_);
        hb2 += kernels::weighted_abs2_sum(bc, hm_weight_);
        gu += kernels::weighted_abs2_sum(uc, diss_weight_u_);
        gb += kernels::weighted_abs2_sum(bc, diss_weight_b_);
    }
    r.energy_u = 0.5 * eu * box_volume;
    r.energy_b = 0.5 * eb * box_volume;
    r.hm_u = std::sqrt(hu2 * box_volume);
    r.hm_b = std::sqrt(hb2 * box_volume);
    r.x_of_t = 1.0 + hb2 * box_volume + hu2 * box_volume;
    gu *= box_volume;
    gb *= box_volume;

    VectorField omega = curl(s.u);
    double besov = 0.0;
    int bad = 0;
    const int nsh = shells_.num_shells();
#pragma omp parallel for collapse(2) schedule(dynamic) reduction(max : besov) reduction(| : bad)
    for (int c = 0; c < 3; ++c)
        for (int j = 1; j <= nsh; ++j) {
            try {
                SpectralField part = shells_.restrict_to(omega.comp(c), j);
                bool empty = true;
                for (const cplx& v : part.coeffs())
                    if (v != cplx{}) {
                        empty = false;
                        break;
                    }
                if (!empty) besov = std::max(besov, linf_norm(part));
            } catch (const std::exception&) {
                bad |= 1;
            }
        }
    if (bad) throw std::runtime_error("Recorder: corrupted state");
    r.besov_omega = besov;

    r.linf_u = linf_norm(s.u);
    r.linf_b = linf_norm(s.b);
    r.linf_grad_b = grad_linf(s.b);
    r.a_of_t = besov + (1.0 + r.linf_u * r.linf_u + r.linf_b * r.linf_b +
                        r.linf_grad_b * r.linf_grad_b) /
                           (1.0 + std::log(1.0 + r.linf_u + r.linf_b + r.linf_grad_b));

    r.div_u_max = divergence_linf(s.u);
    r.div_b_max = divergence_linf(s.b);

    if (records_.empty()) {
        r.diss_u = 0.0;
        r.diss_b = 0.0;
    } else {
        const double dt = r.t - prev_t_;
        r.diss_u = records_.back().diss_u + 0.5 * (prev_gu_ + gu) * dt;
        r.diss_b = records_.back().diss_b + 0.5 * (prev_gb_ + gb) * dt;
    }
    prev_t_ = r.t;
    prev_gu_ = gu;
    prev_gb_ = gb;
    last_linf_u_ = r.linf_u;
    last_linf_b_ = r.linf_b;

    records_.push_back(r);
    return records_.back();
}

BudgetReport energy_budget(const std::vector<DiagnosticsRecord>& history) {
    if (history.empty()) throw std::invalid_argument("energy_budget: empty history");
    BudgetReport rep;
    rep.initial_energy = history.front().energy_u + history.front().energy_b;
    rep.min_deficit = std::numeric_limits<double>::infinity();
    for (const auto& r : history) {
        const double deficit =
            rep.initial_energy - (r.energy_u + r.energy_b + r.diss_u + r.diss_b);
        if (deficit < rep.min_deficit) {
            rep.min_deficit = deficit;
            rep.t_min = r.t;
        }
    }
    rep.violation = rep.min_deficit < -BudgetReport::tol_rel * rep.initial_energy;
    return rep;
}

}  // namespace hmhd
