#include "wpcn/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include <omp.h>

#include "wpcn/error.hpp"

namespace wpcn {

namespace {

struct Job {
    std::size_t policy = 0;
    std::size_t point = 0;
    std::size_t rep = 0;
};

std::vector<Job> enumerate_jobs(const SweepSpec& spec) {
    std::vector<Job> jobs;
    jobs.reserve(spec.policy_ids.size() * spec.axis_values.size() * spec.replications);
    for (std::size_t p = 0; p < spec.policy_ids.size(); ++p) {
        for (std::size_t x = 0; x < spec.axis_values.size(); ++x) {
            for (std::size_t r = 0; r < spec.replications; ++r) jobs.push_back({p, x, r});
        }
    }
    return jobs;
}

std::uint64_t job_seed(const SweepSpec& spec, const Job& job) {
    const std::size_t point = spec.common_seeds_across_axis ? 0 : job.point;
    return RngStream::derive_seed(spec.base_seed, point, job.rep);
}

SimResult run_job(const SweepSpec& spec, const Job& job) {
    SimOptions options;
    options.warmup = spec.warmup;
    return simulate(params_at(spec, spec.axis_values[job.point]), spec.policy_ids[job.policy],
                    spec.slots_per_point, job_seed(spec, job), options);
}

std::vector<CurvePoint> merge(const SweepSpec& spec, const std::vector<SimResult>& results) {
    std::vector<CurvePoint> points;
    points.reserve(spec.policy_ids.size() * spec.axis_values.size());
    std::size_t k = 0;
    for (PolicyId policy : spec.policy_ids) {
        for (double value : spec.axis_values) {
            points.push_back(aggregate(spec, policy, value, std::span(results).subspan(k, spec.replications)));
            k += spec.replications;
        }
    }
    return points;
}

}  // namespace

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::RateTarget:
            return "rate_target";
        case SweepAxis::NRelays:
            return "n_relays";
        case SweepAxis::DecodeSetCap:
            return "decode_set_cap";
    }
    return "unknown";
}

SweepAxis parse_axis(std::string_view text) {
    for (SweepAxis a : {SweepAxis::RateTarget, SweepAxis::NRelays, SweepAxis::DecodeSetCap}) {
        if (to_string(a) == text) return a;
    }
    throw ConfigError("unknown sweep axis '" + std::string(text) + "'");
}

SystemParams params_at(const SweepSpec& spec, double axis_value) {
    SystemParams p = spec.base_params;
    switch (spec.axis) {
        case SweepAxis::RateTarget:
            p.rate_target = axis_value;
            break;
        case SweepAxis::NRelays:
            p.n_relays = static_cast<std::size_t>(std::llround(axis_value));
            break;
        case SweepAxis::DecodeSetCap:
            p.decode_set_cap = static_cast<std::size_t>(std::llround(axis_value));
            break;
    }
    return p;
}

void validate(const SweepSpec& spec) {
    if (spec.policy_ids.empty()) throw ConfigError("sweep needs at least one policy");
    if (spec.axis_values.empty()) throw ConfigError("sweep axis has no values");
    if (spec.replications < 1) throw ConfigError("replications must be at least 1");
    if (spec.slots_per_point < 1) throw ConfigError("slots per point must be at least 1");
    for (std::size_t i = 1; i < spec.axis_values.size(); ++i) {
        if (!(spec.axis_values[i] > spec.axis_values[i - 1])) {
            throw ConfigError("sweep axis values must be strictly increasing");
        }
    }
    if (spec.axis == SweepAxis::DecodeSetCap) {
        for (PolicyId id : spec.policy_ids) {
            if (!is_two_phase(id)) {
                throw ConfigError("decode_set_cap axis requires a two-phase policy, got '" +
                                  std::string(to_string(id)) + "'");
            }
        }
    }
    if (spec.axis != SweepAxis::RateTarget) {
        for (double v : spec.axis_values) {
            if (v < 1 || v != std::floor(v)) throw ConfigError("count axis values must be positive integers");
        }
    }
    for (double v : spec.axis_values) wpcn::validate(params_at(spec, v));
}

CurvePoint aggregate(const SweepSpec& spec, PolicyId policy, double axis_value,
                     std::span<const SimResult> replications) {
    const SystemParams p = params_at(spec, axis_value);
    CurvePoint c;
    c.policy = policy;
    c.axis = spec.axis;
    c.axis_value = axis_value;
    c.n_relays = p.n_relays;
    c.decode_set_cap = p.decode_set_cap;
    c.eta = p.harvest_efficiency;
    c.rate_target = p.rate_target;
    c.slots = spec.slots_per_point;
    c.replications = replications.size();
    c.base_seed = spec.base_seed;

    std::uint64_t packets = 0, outages = 0, first = 0, energy = 0, second = 0;
    for (const SimResult& r : replications) {
        packets += r.packets;
        outages += r.outages;
        first += r.cause_first_hop;
        energy += r.cause_energy;
        second += r.cause_second_hop;
        c.replication_seeds.push_back(r.seed);
    }
    if (packets > 0) {
        const double n = static_cast<double>(packets);
        c.outage_prob = static_cast<double>(outages) / n;
        c.cause_first_hop_frac = static_cast<double>(first) / n;
        c.cause_energy_frac = static_cast<double>(energy) / n;
        c.cause_second_hop_frac = static_cast<double>(second) / n;
    }
    c.ci95 = binomial_ci95(outages, packets);
    return c;
}

std::vector<CurvePoint> run_sweep(const SweepSpec& spec, int threads) {
    validate(spec);
    const std::vector<Job> jobs = enumerate_jobs(spec);
    std::vector<SimResult> results(jobs.size());
    std::exception_ptr failure;
    const int n_threads = threads > 0 ? threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(n_threads)
    for (std::size_t k = 0; k < jobs.size(); ++k) {
        try {
            results[k] = run_job(spec, jobs[k]);
        } catch (...) {
#pragma omp critical(wpcn_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return merge(spec, results);
}

std::vector<CurvePoint> run_sweep_serial(const SweepSpec& spec) {
    validate(spec);
    const std::vector<Job> jobs = enumerate_jobs(spec);
    std::vector<SimResult> results;
    results.reserve(jobs.size());
    for (const Job& job : jobs) results.push_back(run_job(spec, job));
    return merge(spec, results);
}

MOptimum optimize_m(const SystemParams& params, std::span<const std::size_t> m_range, double rate_target,
                    std::uint64_t slots, std::uint64_t seed, PolicyId policy, std::size_t replications,
                    int threads) {
    if (m_range.empty()) throw ConfigError("M range is empty");
    if (!is_two_phase(policy)) {
        throw ConfigError("M search requires a two-phase policy, got '" + std::string(to_string(policy)) + "'");
    }
    std::vector<std::size_t> ms(m_range.begin(), m_range.end());
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    if (ms.front() < 1 || ms.back() > params.n_relays) {
        throw ConfigError("M candidates must lie in [1, n_relays]");
    }

    SweepSpec spec;
    spec.base_params = params;
    spec.base_params.rate_target = rate_target;
    spec.policy_ids = {policy};
    spec.axis = SweepAxis::DecodeSetCap;
    for (std::size_t m : ms) spec.axis_values.push_back(static_cast<double>(m));
    spec.slots_per_point = slots;
    spec.base_seed = seed;
    spec.replications = replications;
    spec.common_seeds_across_axis = true;

    MOptimum best;
    best.profile = run_sweep(spec, threads);
    const auto lowest = std::min_element(best.profile.begin(), best.profile.end(),
                                         [](const CurvePoint& a, const CurvePoint& b) {
                                             return a.outage_prob < b.outage_prob;
                                         });
    const double cutoff = lowest->outage_prob + lowest->ci95;
    for (const CurvePoint& c : best.profile) {
        if (c.outage_prob <= cutoff) {
            best.best_m = c.decode_set_cap;
            best.outage_prob = c.outage_prob;
            best.ci95 = c.ci95;
            break;
        }
    }
    return best;
}

}  // namespace wpcn
