#include "ntnsim/offload.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>

#include "ntnsim/channel.hpp"

namespace ntnsim {

// Terrestrial ALOHA success for a device that keeps transmitting to its
// gateway while a fraction eta of its group's traffic is redirected away.
double p_success_tg(double eta, double toa_s, double rate_hz, double count) {
    if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("eta must be in [0,1]");
    return std::exp(-(1.0 - eta) * toa_s * rate_hz * count);
}

namespace {

// Objective on the simplex: f(a) = sum_v a_v * exp(-a_v * c_v).
double simplex_objective(const std::vector<double>& a, const std::vector<double>& c) {
    double f = 0.0;
    for (size_t v = 0; v < a.size(); ++v) f += a[v] * std::exp(-a[v] * c[v]);
    return f;
}

// d/da_v of a_v exp(-a_v c_v) = exp(-a_v c_v) (1 - a_v c_v); strictly
// decreasing in a_v while a_v c_v < 2.
double stationarity(double x) { return std::exp(-x) * (1.0 - x); }

// Solve stationarity(x) = mu on [0, 2] (monotone decreasing branch).
double invert_stationarity(double mu) {
    if (mu >= 1.0) return 0.0;
    double lo = 0.0, hi = 2.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (stationarity(mid) > mu)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

void project_to_simplex(std::vector<double>& a) {
    // Euclidean projection onto {a >= 0, sum a = 1} (sort-based).
    std::vector<double> u = a;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    int rho = 0;
    for (size_t j = 0; j < u.size(); ++j) {
        css += u[j];
        const double t = (css - 1.0) / (j + 1);
        if (u[j] - t > 0.0) {
            rho = static_cast<int>(j) + 1;
            theta = t;
        }
    }
    if (rho == 0) {
        std::fill(a.begin(), a.end(), 1.0 / a.size());
        return;
    }
    for (double& v : a) v = std::max(v - theta, 0.0);
}

} // namespace

InnerSolution solve_inner_alpha(double total_offloaded, double rate_hz,
                                const std::vector<double>& toa_by_v_s, int sf_min) {
    (void)sf_min; // toa_by_v_s is already restricted to the allowed set
    const size_t n = toa_by_v_s.size();
    if (n == 0) throw std::invalid_argument("empty modulation set");
    InnerSolution sol;
    sol.alpha.assign(n, 1.0 / n);
    if (total_offloaded <= 0.0) {
        sol.p_s_leo = 1.0;
        return sol;
    }
    std::vector<double> c(n);
    for (size_t v = 0; v < n; ++v) c[v] = toa_by_v_s[v] * rate_hz * total_offloaded;

    // KKT: at the optimum all active coordinates share the same marginal mu;
    // bisect mu so the implied allocation sums to 1.
    double sum_cap = 0.0;
    for (double cv : c) sum_cap += 2.0 / cv;
    if (sum_cap >= 1.0) {
        double inv_sum = 0.0;
        for (double cv : c) inv_sum += 1.0 / cv;
        double mu_lo = stationarity(2.0), mu_hi = 1.0;
        for (int it = 0; it < 80; ++it) {
            const double mu = 0.5 * (mu_lo + mu_hi);
            if (invert_stationarity(mu) * inv_sum > 1.0)
                mu_lo = mu;
            else
                mu_hi = mu;
        }
        const double mu = 0.5 * (mu_lo + mu_hi);
        const double x = invert_stationarity(mu);
        for (size_t v = 0; v < n; ++v) sol.alpha[v] = x / c[v];
        const double s = std::accumulate(sol.alpha.begin(), sol.alpha.end(), 0.0);
        for (double& av : sol.alpha) av /= s;
    } else {
        // Load so heavy that the concave branch cannot absorb all mass:
        // projected gradient ascent.
        std::vector<double>& a = sol.alpha;
        for (int it = 0; it < 3000; ++it) {
            std::vector<double> g(n);
            for (size_t v = 0; v < n; ++v) g[v] = stationarity(a[v] * c[v]);
            for (size_t v = 0; v < n; ++v) a[v] += 0.1 * g[v];
            project_to_simplex(a);
        }
    }
    sol.p_s_leo = simplex_objective(sol.alpha, c);
    return sol;
}

OffloadProblem OffloadProblem::single_cell(const std::array<double, 6>& device_counts,
                                           double rate_hz,
                                           const std::array<double, 6>& toa_by_sf_s,
                                           int sf_min) {
    OffloadProblem p;
    p.arrival_rate_hz = rate_hz;
    p.toa_by_sf_s = toa_by_sf_s;
    p.sf_min = sf_min;
    for (int k = 0; k < 6; ++k)
        if (device_counts[k] > 0.0) p.groups.push_back({0, 7 + k, device_counts[k]});
    return p;
}

namespace {

// Tabulated satellite success probability vs offered load; the inner simplex
// solve is smooth in the load, so interpolation keeps the per-coordinate line
// searches cheap.
class LeoLoadTable {
public:
    LeoLoadTable(double max_load, double rate_hz, const std::vector<double>& toa, int sf_min)
        : step_(std::max(max_load / 400.0, 1.0)) {
        const size_t n = static_cast<size_t>(std::ceil(max_load / step_)) + 2;
        table_.reserve(n);
        for (size_t i = 0; i < n; ++i)
            table_.push_back(solve_inner_alpha(i * step_, rate_hz, toa, sf_min).p_s_leo);
    }
    double operator()(double load) const {
        if (load <= 0.0) return table_.front();
        const double pos = load / step_;
        const size_t i = std::min(static_cast<size_t>(pos), table_.size() - 2);
        const double frac = pos - i;
        return table_[i] * (1.0 - frac) + table_[i + 1] * frac;
    }

private:
    double step_;
    std::vector<double> table_;
};

double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < iters; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(x1);
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

OffloadSolution solve_offload(const OffloadProblem& problem) {
    const size_t n = problem.groups.size();
    OffloadSolution sol;
    sol.eta.assign(n, 0.5);

    std::vector<double> toa(problem.toa_by_sf_s.begin() + (problem.sf_min - 7),
                            problem.toa_by_sf_s.end());
    double total_devices = problem.forced_offload;
    for (const auto& g : problem.groups) total_devices += g.count;
    const double max_load = total_devices + problem.background_load;
    const LeoLoadTable psl(max_load, problem.arrival_rate_hz, toa, problem.sf_min);

    const double lam = problem.arrival_rate_hz;
    auto group_toa = [&](size_t i) { return problem.toa_by_sf_s[problem.groups[i].sf - 7]; };

    double dtot = problem.forced_offload + problem.background_load;
    for (size_t i = 0; i < n; ++i) dtot += sol.eta[i] * problem.groups[i].count;

    const int max_sweeps = 200;
    const double tol = 1e-6;
    int sweep = 0;
    bool converged = false;
    for (; sweep < max_sweeps && !converged; ++sweep) {
        double max_delta = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double Ni = problem.groups[i].count;
            const double Ti = group_toa(i);
            const double base = dtot - sol.eta[i] * Ni;
            auto f = [&](double e) {
                return (1.0 - e) * std::exp(-(1.0 - e) * Ti * lam * Ni) +
                       e * problem.leo_gate * psl(base + e * Ni);
            };
            const double e = golden_max(f, 0.0, 1.0, 40);
            max_delta = std::max(max_delta, std::abs(e - sol.eta[i]));
            sol.eta[i] = e;
            dtot = base + e * Ni;
        }
        if (max_delta < tol) converged = true;
    }
    sol.iterations = sweep;
    sol.converged = converged || n == 0;

    const auto inner = solve_inner_alpha(dtot, lam, toa, problem.sf_min);
    sol.alpha = inner.alpha;
    sol.p_s_leo = problem.leo_gate * inner.p_s_leo;

    sol.p_s_per_group.resize(n);
    double weighted = problem.forced_offload * sol.p_s_leo;
    for (size_t i = 0; i < n; ++i) {
        const double e = sol.eta[i];
        sol.p_s_per_group[i] =
            (1.0 - e) * p_success_tg(e, group_toa(i), lam, problem.groups[i].count) +
            e * sol.p_s_leo;
        weighted += problem.groups[i].count * sol.p_s_per_group[i];
    }
    sol.mean_p_s = total_devices > 0.0 ? weighted / total_devices : 1.0;
    return sol;
}

namespace {

// P(satellite detection | line-of-sight fading) at the smallest link margin in
// the service area; evaluated once by a fixed-seed Monte Carlo draw.
double leo_detection_gate(const ScenarioConfig& cfg) {
    const TechnologyProfile prof = default_profile(Tech::LoRa);
    const Platform leo = make_platform(PlatformKind::LEO);
    const auto geo = slant_geometry(0.0, leo.altitude_km, cfg.channel.spherical);
    const double extra = cfg.channel.los ? cfg.channel.fading.extra_loss_los_db
                                         : cfg.channel.fading.extra_loss_nlos_db;
    const double pl = free_space_path_loss_db(geo.slant_km, prof.carrier_freq_hz, 0.0, extra);
    const double mean_rx = received_power_dbm(prof.tx_power_dbm, prof.tx_antenna_gain_db,
                                              leo.rx_antenna_gain_db, pl, 1.0);
    const double margin_db = mean_rx - lora_sensitivity_dbm(7);
    const double thr = std::pow(10.0, -margin_db / 10.0);

    // The draw is expensive and the gate only depends on the fading parameters
    // and the threshold, so memoize it.
    static std::mutex mu;
    static std::map<std::tuple<double, double, double, double>, double> cache;
    const auto key = std::make_tuple(thr, cfg.channel.fading.sr_m,
                                     cfg.channel.fading.sr_b0, cfg.channel.fading.sr_omega);
    {
        std::lock_guard<std::mutex> lk(mu);
        const auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Rng rng = make_rng(99, 0);
    const int n = 2'000'000;
    long hits = 0;
    for (int i = 0; i < n; ++i)
        if (sample_fading(LinkKind::GroundToLEO, cfg.channel.fading, rng) >= thr) ++hits;
    const double gate = static_cast<double>(hits) / n;
    std::lock_guard<std::mutex> lk(mu);
    cache[key] = gate;
    return gate;
}

} // namespace

OffloadScenarioResult evaluate_offload_scenario(const Scenario& scenario,
                                                const OffloadStudyConfig& study,
                                                OffloadMode mode) {
    const auto& cfg = scenario.config;
    if (scenario.gateways.empty())
        throw ConfigError("offload evaluation needs at least one terrestrial gateway");
    const TechnologyProfile prof = default_profile(Tech::LoRa);
    const double eirp = prof.tx_power_dbm + prof.tx_antenna_gain_db + 8.0;

    std::array<double, 6> toa{};
    for (int k = 0; k < 6; ++k)
        toa[k] = lora_toa_s(7 + k, prof.bandwidth_hz, study.payload_bytes);

    // Attach each device to its nearest gateway; assign the lowest spreading
    // factor the shadowed budget supports, or mark it out of coverage.
    Rng rng = make_rng(cfg.seed, 1);
    std::normal_distribution<double> shadow(0.0, cfg.channel.ground_shadowing_db);
    std::map<std::pair<int, int>, double> counts; // (cell, sf) -> devices
    long n_out = 0;
    const long n_id = static_cast<long>(scenario.devices.size());
    for (const auto& dev : scenario.devices) {
        int cell = -1;
        double best_d2 = std::numeric_limits<double>::infinity();
        for (size_t g = 0; g < scenario.gateways.size(); ++g) {
            const double dx = dev.x_km - scenario.gateways[g].x_km;
            const double dy = dev.y_km - scenario.gateways[g].y_km;
            const double d2 = dx * dx + dy * dy;
            if (d2 < best_d2) {
                best_d2 = d2;
                cell = static_cast<int>(g);
            }
        }
        if (cell < 0) {
            ++n_out;
            continue;
        }
        const double d_m = std::max(std::sqrt(best_d2) * 1000.0, 1.0);
        const double sh = cfg.channel.ground_shadowing_db > 0.0 ? shadow(rng) : 0.0;
        const double rx = eirp -
                          (cfg.channel.ground_pl0_db +
                           10.0 * cfg.channel.ground_exponent * std::log10(d_m)) +
                          sh;
        int sf = -1;
        for (int k = 7; k <= 12; ++k) {
            if (rx >= lora_sensitivity_dbm(k)) {
                sf = k;
                break;
            }
        }
        if (sf < 0)
            ++n_out;
        else
            counts[{cell, sf}] += 1.0;
    }

    OffloadScenarioResult res;
    res.out_of_coverage_fraction = n_id > 0 ? static_cast<double>(n_out) / n_id : 0.0;
    if (n_id == 0) {
        res.mean_p_s = 1.0;
        return res;
    }

    if (mode == OffloadMode::StandaloneTG) {
        double tot = 0.0;
        for (const auto& [key, n] : counts)
            tot += n * std::exp(-toa[key.second - 7] * study.rate_hz * n);
        res.mean_p_s = tot / n_id;
        return res;
    }

    OffloadProblem prob;
    prob.arrival_rate_hz = study.rate_hz;
    prob.toa_by_sf_s = toa;
    prob.sf_min = study.sf_min;
    prob.forced_offload = static_cast<double>(n_out);
    prob.background_load = study.background_load;
    prob.leo_gate = study.leo_gate_from_fading ? leo_detection_gate(cfg) : 1.0;
    for (const auto& [key, n] : counts) prob.groups.push_back({key.first, key.second, n});

    res.solution = solve_offload(prob);
    res.mean_p_s = res.solution.mean_p_s;
    return res;
}

} // namespace ntnsim
