// fitter.cpp — weighted-residual objective and simplex search over SystemParams

#include "fluxpair/fitter.hpp"

#include "fluxpair/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fluxpair {

namespace {

constexpr double k_penalty = 1e6;

std::string describe(const Observation& o) {
    std::ostringstream out;
    out << "(" << o.from.k << "," << o.from.l << "," << o.from.m << ")->(" << o.to.k << ","
        << o.to.l << "," << o.to.m << ") at phi_ext=" << o.phi_ext;
    return out.str();
}

void validate_observations(const std::vector<Observation>& obs) {
    for (const auto& o : obs) {
        if (!(o.freq_ghz > 0.0))
            throw std::invalid_argument("residuals: observation frequency must be positive");
        if (!(o.weight > 0.0))
            throw std::invalid_argument("residuals: observation weight must be positive");
    }
}

// Objective context: observations pre-grouped by flux point so each trial
// evaluation solves every flux once.
struct Objective {
    const std::vector<Observation>& obs;
    std::map<double, std::vector<std::size_t>> by_phi;
    TruncationConfig trunc;
    long evals = 0;

    Objective(const std::vector<Observation>& observations, const TruncationConfig& t)
        : obs(observations), trunc(t) {
        for (std::size_t i = 0; i < obs.size(); ++i) by_phi[obs[i].phi_ext].push_back(i);
    }

    std::vector<double> residuals_at(const SystemParams& p) const {
        std::vector<double> out(obs.size(), 0.0);
        for (const auto& [phi, idx] : by_phi) {
            const LabeledSpectrum spec = solve_labeled(p, phi);
            for (std::size_t i : idx) {
                const LabeledState* from = spec.find(obs[i].from);
                const LabeledState* to = spec.find(obs[i].to);
                if (from == nullptr || to == nullptr)
                    throw LabelingError("residuals: no state with label " + describe(obs[i]));
                out[i] = (to->energy - from->energy - obs[i].freq_ghz) * obs[i].weight;
            }
        }
        return out;
    }

    double rms(const ParamVector& v) {
        ++evals;
        try {
            const std::vector<double> r = residuals_at(unpack_params(v, trunc));
            double sum = 0.0;
            for (double x : r) sum += x * x;
            return std::sqrt(sum / static_cast<double>(r.size()));
        } catch (const std::exception&) {
            return k_penalty;
        }
    }
};

ParamVector clamp_to(const FitBounds& b, ParamVector v) {
    for (int i = 0; i < n_fit_params; ++i) v[i] = std::clamp(v[i], b.lo[i], b.hi[i]);
    return v;
}

} // namespace

ParamVector pack_params(const SystemParams& p) {
    return {p.qubit_a.e_j, p.qubit_a.e_c, p.qubit_a.e_l, p.qubit_b.e_j, p.qubit_b.e_c,
            p.qubit_b.e_l, p.j_c,         p.j_l,         p.g_a,         p.g_b,
            p.f_lc};
}

SystemParams unpack_params(const ParamVector& v, const TruncationConfig& trunc) {
    SystemParams p;
    p.qubit_a = {v[0], v[1], v[2], 'A'};
    p.qubit_b = {v[3], v[4], v[5], 'B'};
    p.j_c = v[6];
    p.j_l = v[7];
    p.g_a = v[8];
    p.g_b = v[9];
    p.f_lc = v[10];
    p.trunc = trunc;
    return p;
}

FitBounds FitBounds::wide() {
    return {{0.1, 0.05, 0.02, 0.1, 0.05, 0.02, -1.0, 0.0, -1.0, -1.0, 0.5},
            {30.0, 5.0, 5.0, 30.0, 5.0, 5.0, 1.0, 0.5, 1.0, 1.0, 12.0}};
}

std::vector<double> residuals(const SystemParams& params, const std::vector<Observation>& obs) {
    if (obs.empty()) throw std::invalid_argument("residuals: no observations");
    validate_observations(obs);
    return Objective(obs, params.trunc).residuals_at(params);
}

FitResult fit(const std::vector<Observation>& obs, const SystemParams& initial,
              const FitOptions& options) {
    validate_observations(obs);

    int n_free = 0;
    for (bool f : options.frozen) n_free += f ? 0 : 1;
    if (n_free == 0) throw std::invalid_argument("fit: every parameter is frozen");
    if (static_cast<long>(obs.size()) < n_free)
        throw std::invalid_argument("fit: fewer observations than free parameters");
    if (options.restarts < 1 || options.max_evals_per_restart < n_free + 2)
        throw std::invalid_argument("fit: bad restart/evaluation budget");

    const ParamVector x0 = pack_params(initial);
    for (int i = 0; i < n_fit_params; ++i) {
        if (!(options.bounds.lo[i] <= options.bounds.hi[i]))
            throw std::invalid_argument("fit: inverted bounds");
        if (!std::isfinite(x0[i]) || x0[i] < options.bounds.lo[i] || x0[i] > options.bounds.hi[i])
            throw std::invalid_argument("fit: initial point outside bounds");
    }

    std::vector<int> free_idx;
    for (int i = 0; i < n_fit_params; ++i)
        if (!options.frozen[i]) free_idx.push_back(i);

    Objective objective(obs, initial.trunc);
    auto eval = [&](const ParamVector& v) { return objective.rms(clamp_to(options.bounds, v)); };

    ParamVector best = x0;
    double best_val = eval(best);
    bool converged = false;
    std::mt19937_64 rng(options.seed);

    for (int restart = 0; restart < options.restarts && best_val > options.goal_rms; ++restart) {
        ParamVector start = best;
        if (restart >= 2) {
            // Seeded kick to escape a stalled basin; the best point is kept regardless.
            std::uniform_real_distribution<double> jitter(-0.02, 0.02);
            for (int i : free_idx) start[i] *= 1.0 + jitter(rng);
            start = clamp_to(options.bounds, start);
        }
        const double scale_fac = restart == 0 ? 0.05 : 0.01;

        // Axis-aligned initial simplex over the free coordinates.
        std::vector<ParamVector> simplex{start};
        for (int i : free_idx) {
            ParamVector v = start;
            v[i] += std::max(std::abs(v[i]) * scale_fac, 1e-5);
            simplex.push_back(v);
        }
        std::vector<double> vals;
        vals.reserve(simplex.size());
        for (const auto& v : simplex) vals.push_back(eval(v));

        const long eval_budget = objective.evals + options.max_evals_per_restart;
        bool terminated = false;
        while (objective.evals < eval_budget) {
            // Order so that vals[0] is best, vals.back() worst.
            std::vector<std::size_t> order(simplex.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
            std::vector<ParamVector> s2;
            std::vector<double> v2;
            for (std::size_t i : order) {
                s2.push_back(simplex[i]);
                v2.push_back(vals[i]);
            }
            simplex.swap(s2);
            vals.swap(v2);

            if (vals.back() - vals.front() <
                options.stagnation_tol * (std::abs(vals.front()) + options.stagnation_tol)) {
                terminated = true;
                break;
            }
            double extent = 0.0, base = 1.0;
            for (int i : free_idx) base = std::max(base, std::abs(simplex.front()[i]));
            for (std::size_t j = 1; j < simplex.size(); ++j)
                for (int i : free_idx)
                    extent = std::max(extent, std::abs(simplex[j][i] - simplex.front()[i]));
            if (extent < options.simplex_tol * base) {
                terminated = true;
                break;
            }

            ParamVector centroid{};
            for (std::size_t j = 0; j + 1 < simplex.size(); ++j)
                for (int i : free_idx) centroid[i] += simplex[j][i];
            for (int i : free_idx) centroid[i] /= static_cast<double>(simplex.size() - 1);

            auto blend = [&](double t) {
                ParamVector v = simplex.front();
                for (int i : free_idx) v[i] = centroid[i] + t * (centroid[i] - simplex.back()[i]);
                return v;
            };
            const ParamVector reflect = blend(1.0);
            const double f_reflect = eval(reflect);
            if (f_reflect < vals.front()) {
                const ParamVector expand = blend(2.0);
                const double f_expand = eval(expand);
                if (f_expand < f_reflect) {
                    simplex.back() = expand;
                    vals.back() = f_expand;
                } else {
                    simplex.back() = reflect;
                    vals.back() = f_reflect;
                }
            } else if (f_reflect < vals[vals.size() - 2]) {
                simplex.back() = reflect;
                vals.back() = f_reflect;
            } else {
                const ParamVector contract = blend(-0.5);
                const double f_contract = eval(contract);
                if (f_contract < vals.back()) {
                    simplex.back() = contract;
                    vals.back() = f_contract;
                } else {
                    for (std::size_t j = 1; j < simplex.size(); ++j) {
                        for (int i : free_idx)
                            simplex[j][i] = simplex.front()[i] +
                                            0.5 * (simplex[j][i] - simplex.front()[i]);
                        vals[j] = eval(simplex[j]);
                    }
                }
            }
        }

        const std::size_t best_j = static_cast<std::size_t>(
            std::min_element(vals.begin(), vals.end()) - vals.begin());
        if (vals[best_j] < best_val) {
            best_val = vals[best_j];
            best = clamp_to(options.bounds, simplex[best_j]);
        }
        converged = terminated;
    }

    FitResult result;
    result.params = unpack_params(best, initial.trunc);
    result.iterations = objective.evals;
    result.converged = (converged || best_val <= options.goal_rms) && best_val < k_penalty;
    try {
        result.residuals = objective.residuals_at(result.params);
        double sum = 0.0;
        for (double x : result.residuals) sum += x * x;
        result.residual_rms = std::sqrt(sum / static_cast<double>(result.residuals.size()));
    } catch (const std::exception&) {
        result.residual_rms = k_penalty;
        result.converged = false;
    }
    return result;
}

} // namespace fluxpair
