#include "ptqs/dilation.hpp"
#include "ptqs/errors.hpp"
#include "ptqs/lindblad.hpp"
#include "ptqs/metrology.hpp"
#include "ptqs/pt_dynamics.hpp"
#include "ptqs/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <tuple>

namespace ptqs::sweep {

namespace {

constexpr double undefined = std::numeric_limits<double>::quiet_NaN();

struct Job {
    double gamma_ratio;
    double delta_ratio;
    double tau;
    Quantity quantity;
    SchemeName scheme;
};

std::vector<std::string> component_names(Quantity q, SchemeName s) {
    switch (q) {
        case Quantity::Population:
            if (s == SchemeName::Pt) return {"rho11", "rho22"};
            if (s == SchemeName::Dilation) return {"P1", "P2", "P3", "P4"};
            return {"rho11", "rho22", "rho33"};
        case Quantity::PostselectRates: return {"p_suc", "p_fail"};
        case Quantity::PopulationShift: return {"shift"};
        case Quantity::Susceptibility: return {"S"};
        case Quantity::QfiSingle:
            if (s == SchemeName::Pt) return {"F_pt"};
            if (s == SchemeName::Dilation) return {"F_pt", "F_a", "F_4d"};
            return {"F_eff"};
        case Quantity::QfiWeighted:
            if (s == SchemeName::Dilation) return {"I_suc", "I_fail", "I_subs", "I_4d"};
            return {"I_eff"};
        case Quantity::SensitivityBound:
            if (s == SchemeName::Pt) return {"dw_pt"};
            if (s == SchemeName::Dilation) return {"dw_subs", "dw_4d"};
            return {"dw_eff"};
        case Quantity::Resources: return {"xi", "zeta"};
        case Quantity::LiouvillianSpectrum:
            return {"E1_re", "E1_im", "E2_re", "E2_im", "E3_re", "E3_im", "E4_re", "E4_im"};
    }
    return {};
}

metrology::Scheme metrology_scheme(SchemeName s) {
    switch (s) {
        case SchemeName::Pt: return metrology::Scheme::Pt;
        case SchemeName::Dilation: return metrology::Scheme::Enlarged;
        case SchemeName::Lindblad: return metrology::Scheme::Eff;
    }
    return metrology::Scheme::Pt;
}

// Values in the order of component_names(q, s). `nominal` fixes κ and the
// probe dilation; `shifted` carries ω + δ.
std::vector<double> compute(const Job& job, const SweepConfig& c, const PtParams& nominal,
                            const PtParams& shifted, double t) {
    const Vector2 psi0 = c.probe.vector();
    const auto fd = metrology::FdConfig::relative(shifted, c.fd_h);
    switch (job.quantity) {
        case Quantity::Population:
            if (job.scheme == SchemeName::Pt) {
                const auto rho = pt::evolve_density(DensityMatrix2::pure(psi0), shifted, t);
                return {rho.population(0), rho.population(1)};
            }
            if (job.scheme == SchemeName::Dilation) {
                const auto rho = dilation::evolve_enlarged(psi0, shifted, t);
                return {rho.population(0), rho.population(1), rho.population(2), rho.population(3)};
            } else {
                const auto rho =
                    lindblad::effective_evolve(DensityMatrix2::pure(psi0), shifted, t);
                return {rho(0, 0).real(), rho(1, 1).real(), 1.0 - rho.trace()};
            }
        case Quantity::PostselectRates:
            if (job.scheme == SchemeName::Dilation) {
                const auto out = dilation::postselect(dilation::evolve_enlarged(psi0, shifted, t));
                return {out.p_suc, out.p_fail};
            } else {
                const auto rho =
                    lindblad::effective_evolve(DensityMatrix2::pure(psi0), shifted, t);
                return {rho.trace(), 1.0 - rho.trace()};
            }
        case Quantity::PopulationShift:
            return {metrology::population_shift(metrology_scheme(job.scheme), nominal,
                                                job.delta_ratio * c.omega, t, psi0)};
        case Quantity::Susceptibility: {
            const auto f = metrology::state_map(metrology_scheme(job.scheme), psi0, shifted, t);
            return {metrology::susceptibility(f, shifted, 0, fd)};
        }
        case Quantity::QfiSingle:
        case Quantity::QfiWeighted:
        case Quantity::SensitivityBound:
        case Quantity::Resources:
            break;
        case Quantity::LiouvillianSpectrum: {
            const auto decomp = lindblad::liouvillian_matrix(shifted);
            std::vector<double> out;
            for (const cplx& e : decomp.eigenvalues) {
                out.push_back(e.real());
                out.push_back(e.imag());
            }
            return out;
        }
    }

    if (job.scheme == SchemeName::Pt) {
        const double f = metrology::qfi_pt(shifted, t, fd, psi0);
        if (job.quantity == Quantity::QfiSingle) return {f};
        return {metrology::cramer_rao(f, c.N)};
    }
    if (job.scheme == SchemeName::Lindblad) {
        const auto r = metrology::weighted_qfi_scheme2(shifted, t, fd, psi0, c.N);
        if (job.quantity == Quantity::QfiSingle) return {r.F_eff};
        if (job.quantity == Quantity::QfiWeighted) return {r.I_eff};
        return {r.delta_omega_eff};
    }
    const auto r = metrology::weighted_qfi_scheme1(shifted, t, fd, psi0, c.N);
    switch (job.quantity) {
        case Quantity::QfiSingle: return {r.F_pt, r.F_a, r.F_4d};
        case Quantity::QfiWeighted: return {r.I_suc, r.I_fail, r.I_subs, r.I_4d};
        case Quantity::SensitivityBound: return {r.delta_omega_subs, r.delta_omega_4d};
        default: {
            const auto res = metrology::resource_metrics(r);
            return {res.xi, res.zeta};
        }
    }
}

std::vector<RecordRow> run_job(const Job& job, const SweepConfig& c) {
    const auto names = component_names(job.quantity, job.scheme);
    std::vector<double> values(names.size(), undefined);
    double t = undefined;
    try {
        const PtParams nominal(c.omega, job.gamma_ratio * c.omega);
        const PtParams shifted(c.omega * (1.0 + job.delta_ratio), job.gamma_ratio * c.omega);
        const double kappa = nominal.kappa();
        if (job.tau == 0.0) {
            t = 0.0;
        } else if (kappa > 0.0) {
            t = job.tau / kappa;
        }
        if (!std::isnan(t)) values = compute(job, c, nominal, shifted, t);
    } catch (const Error&) {
        // EP-adjacent failures are reported as undefined rows.
        std::fill(values.begin(), values.end(), undefined);
    }
    std::vector<RecordRow> rows;
    rows.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        rows.push_back({job.tau, t, job.gamma_ratio, job.delta_ratio, names[i], values[i],
                        std::string(to_string(job.scheme)), c.probe.label()});
    }
    return rows;
}

}  // namespace

std::vector<RecordRow> evaluate(const SweepConfig& c, unsigned threads) {
    validate(c);
    const auto taus = tau_grid(c);
    std::vector<Job> jobs;
    for (double g : c.gamma_list) {
        for (double d : c.delta_list) {
            for (auto q : c.quantities) {
                for (auto s : c.schemes) {
                    // The spectrum does not depend on τ.
                    if (q == Quantity::LiouvillianSpectrum) {
                        jobs.push_back({g, d, 0.0, q, s});
                        continue;
                    }
                    for (double tau : taus) jobs.push_back({g, d, tau, q, s});
                }
            }
        }
    }

    std::vector<std::vector<RecordRow>> results(jobs.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) results[i] = run_job(jobs[i], c);
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    std::vector<RecordRow> rows;
    for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(rows));
    std::sort(rows.begin(), rows.end(), [](const RecordRow& a, const RecordRow& b) {
        return std::tie(a.gamma_ratio, a.delta_ratio, a.tau, a.quantity, a.scheme) <
               std::tie(b.gamma_ratio, b.delta_ratio, b.tau, b.quantity, b.scheme);
    });
    return rows;
}

}  // namespace ptqs::sweep
