#include "rolemine/synth.hpp"

#include "rolemine/civil_time.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace rolemine {

namespace {

struct Archetype {
    double code;
    double discuss;
    double admin;
    double share;    // fraction of the population
    double presence; // probability of activity in a quarter
};

// Two heavy archetypes, three light ones.
constexpr Archetype kArchetypes[] = {
    {45.0, 24.0, 11.0, 0.02, 0.92}, // prolific committer
    {14.0, 38.0, 30.0, 0.02, 0.92}, // maintainer
    {0.1, 12.0, 0.6, 0.30, 0.66},   // issue reporter
    {10.0, 0.8, 0.2, 0.30, 0.6},    // casual coder
    {0.12, 0.3, 0.04, 0.36, 0.45},  // drifter
};
constexpr int kArchetypeCount = 5;

struct QuarterPlan {
    bool present = false;
    int archetype = 0;
    double code = 0;
    double discuss = 0;
    double admin = 0;
};

struct Generator {
    std::mt19937_64 rng;
    std::poisson_distribution<int> poisson_cache{1.0};

    explicit Generator(std::uint64_t seed) : rng(seed) {}

    int poisson(double mean) {
        if (mean <= 0) return 0;
        return std::poisson_distribution<int>(mean)(rng);
    }
    double lognormal(double sigma) {
        return std::exp(std::normal_distribution<double>(0.0, sigma)(rng));
    }
    double uniform() { return std::uniform_real_distribution<double>(0, 1)(rng); }
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    }
};

std::string login_of(int contributor) {
    return "user" + std::to_string(contributor);
}

int comment_length(double discuss, Generator& gen) {
    return static_cast<int>(std::lround(22.0 + 8.0 * std::log1p(discuss))) +
           gen.poisson(3.0);
}

} // namespace

SynthSummary generate_synthetic_store(EventStore& store, const TimeWindow& window,
                                      const SynthOptions& options) {
    Generator gen(options.seed);
    const int periods = window.periods();
    const int n = options.contributors;

    // Quarter boundaries for timestamp placement.
    std::vector<std::int64_t> quarter_start(static_cast<size_t>(periods));
    std::vector<std::int64_t> quarter_length(static_cast<size_t>(periods));
    {
        CivilTime c = civil_from_seconds(window.start());
        for (int q = 0; q < periods; ++q) {
            quarter_start[static_cast<size_t>(q)] = seconds_from_civil(c);
            c.month += 3;
            if (c.month > 12) {
                c.month -= 12;
                c.year += 1;
            }
            quarter_length[static_cast<size_t>(q)] =
                seconds_from_civil(c) - quarter_start[static_cast<size_t>(q)];
        }
    }

    // Base archetype per contributor; the first two stay fixed all window
    // to exercise the constant-trajectory exclusion downstream.
    std::vector<int> base(static_cast<size_t>(n));
    std::vector<double> personal_code(static_cast<size_t>(n));
    std::vector<double> personal_discuss(static_cast<size_t>(n));
    std::vector<double> personal_admin(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (i < 2) {
            base[static_cast<size_t>(i)] = 1;
        } else {
            const double u = gen.uniform();
            double cumulative = 0;
            int chosen = kArchetypeCount - 1;
            for (int a = 0; a < kArchetypeCount; ++a) {
                cumulative += kArchetypes[a].share;
                if (u < cumulative) {
                    chosen = a;
                    break;
                }
            }
            base[static_cast<size_t>(i)] = chosen;
        }
        personal_code[static_cast<size_t>(i)] = gen.lognormal(0.1);
        personal_discuss[static_cast<size_t>(i)] = gen.lognormal(0.1);
        personal_admin[static_cast<size_t>(i)] = gen.lognormal(0.1);
    }

    // Pass 1: presence, per-quarter archetype and intensity draws.
    std::vector<std::vector<QuarterPlan>> plans(
        static_cast<size_t>(n), std::vector<QuarterPlan>(static_cast<size_t>(periods)));
    for (int i = 0; i < n; ++i) {
        for (int q = 0; q < periods; ++q) {
            QuarterPlan& plan = plans[static_cast<size_t>(i)][static_cast<size_t>(q)];
            const int b = base[static_cast<size_t>(i)];
            if (i < 2) {
                plan.present = true;
                plan.archetype = b;
            } else {
                plan.present = gen.uniform() < kArchetypes[b].presence;
                plan.archetype = b;
                if (plan.present && gen.uniform() > 0.78) {
                    if (b <= 1) {
                        plan.archetype = gen.uniform() < 0.5
                                             ? 1 - b
                                             : gen.uniform_int(2, 4);
                    } else {
                        int other = gen.uniform_int(2, 3);
                        if (other >= b) ++other;
                        plan.archetype = other;
                    }
                }
            }
            if (!plan.present) continue;
            const Archetype& a = kArchetypes[plan.archetype];
            plan.code = a.code * personal_code[static_cast<size_t>(i)] *
                        gen.lognormal(0.12);
            plan.discuss = a.discuss * personal_discuss[static_cast<size_t>(i)] *
                           gen.lognormal(0.12);
            plan.admin = a.admin * personal_admin[static_cast<size_t>(i)] *
                         gen.lognormal(0.12);
        }
    }

    // Per-quarter mention pools, weighted by how much each contributor
    // talks: visible people get mentioned.
    std::vector<std::vector<int>> pool_members(static_cast<size_t>(periods));
    std::vector<std::vector<double>> pool_weights(static_cast<size_t>(periods));
    for (int q = 0; q < periods; ++q) {
        for (int i = 0; i < n; ++i) {
            const auto& plan = plans[static_cast<size_t>(i)][static_cast<size_t>(q)];
            if (!plan.present) continue;
            pool_members[static_cast<size_t>(q)].push_back(i);
            pool_weights[static_cast<size_t>(q)].push_back(plan.discuss + 0.05);
        }
        double total = 0;
        for (double& w : pool_weights[static_cast<size_t>(q)]) {
            total += w;
            w = total;
        }
    }
    const auto pick_mention = [&](int q) -> int {
        const auto& weights = pool_weights[static_cast<size_t>(q)];
        if (weights.empty()) return -1;
        const double u = gen.uniform() * weights.back();
        const auto it = std::lower_bound(weights.begin(), weights.end(), u);
        const size_t index = static_cast<size_t>(it - weights.begin());
        return pool_members[static_cast<size_t>(q)][index];
    };

    // Pass 2: event synthesis.
    SynthSummary summary;
    summary.contributors = n;
    summary.periods = periods;
    std::size_t sequence = 0;

    const auto stamp = [&](int q) {
        const std::int64_t offset =
            static_cast<std::int64_t>(sequence * 7919) %
            quarter_length[static_cast<size_t>(q)];
        return quarter_start[static_cast<size_t>(q)] + offset;
    };
    const auto next_id = [&] { return "s" + std::to_string(sequence++); };

    const auto emit = [&](StoredEvent e) {
        store.add(options.project, e);
        ++summary.events;
    };

    const auto make_body = [&](int q, int mention_target, int refs, int target_len) {
        std::string body;
        if (mention_target >= 0) {
            body += "@" + login_of(mention_target) + " ";
        }
        for (int r = 0; r < refs; ++r) {
            body += "#" + std::to_string(gen.uniform_int(1, 900)) + " ";
        }
        (void)q;
        while (static_cast<int>(body.size()) < target_len) body += 'x';
        return body;
    };

    for (int i = 0; i < n; ++i) {
        const std::string login = login_of(i);
        for (int q = 0; q < periods; ++q) {
            const auto& plan = plans[static_cast<size_t>(i)][static_cast<size_t>(q)];
            if (!plan.present) continue;

            const int commits = gen.poisson(plan.code);
            for (int c = 0; c < commits; ++c) {
                StoredEvent e;
                e.kind = ActionKind::Commit;
                e.actor = login;
                e.ts = stamp(q);
                e.id = next_id();
                e.loc_changed = 1 + gen.poisson(34.0);
                const int file_count = 1 + std::min(gen.poisson(1.3), 5);
                for (int f = 0; f < file_count; ++f) {
                    e.files.push_back("src/f" +
                                      std::to_string(gen.uniform_int(0, 63)) +
                                      ".cc");
                }
                emit(std::move(e));
            }

            const int prs = gen.poisson(0.35 * plan.code);
            for (int c = 0; c < prs; ++c) {
                StoredEvent e;
                e.kind = ActionKind::PrOpened;
                e.actor = login;
                e.ts = stamp(q);
                e.id = next_id();
                e.body = make_body(q, -1, 0, comment_length(plan.discuss, gen));
                emit(std::move(e));
            }

            const int issues = gen.poisson(0.35 * plan.discuss);
            for (int c = 0; c < issues; ++c) {
                StoredEvent e;
                e.kind = ActionKind::IssueOpened;
                e.actor = login;
                e.ts = stamp(q);
                e.id = next_id();
                e.body = make_body(q, -1, 0, comment_length(plan.discuss, gen));
                emit(std::move(e));
            }

            const auto comments = [&](ActionKind kind, double rate) {
                const int count = gen.poisson(rate);
                for (int c = 0; c < count; ++c) {
                    StoredEvent e;
                    e.kind = kind;
                    e.actor = login;
                    e.ts = stamp(q);
                    e.id = next_id();
                    const int target =
                        gen.uniform() < 0.45 ? pick_mention(q) : -1;
                    const int refs = gen.poisson(std::min(3.0, 0.32 * plan.admin));
                    e.body = make_body(q, target, refs,
                                       comment_length(plan.discuss, gen));
                    emit(std::move(e));
                }
            };
            comments(ActionKind::IssueComment, 0.85 * plan.discuss);
            comments(ActionKind::PrComment, 0.5 * plan.discuss);

            const auto admin_events = [&](ActionKind kind, double rate) {
                const int count = gen.poisson(rate);
                for (int c = 0; c < count; ++c) {
                    StoredEvent e;
                    e.kind = kind;
                    e.actor = login;
                    e.ts = stamp(q);
                    e.id = next_id();
                    emit(std::move(e));
                }
            };
            admin_events(ActionKind::IssueLabelChange, 0.9 * plan.admin);
            admin_events(ActionKind::PrLabelChange, 0.55 * plan.admin);
            admin_events(ActionKind::IssueClosed, 0.7 * plan.admin);
            admin_events(ActionKind::PrClosed, 0.45 * plan.admin);
        }
    }

    store.save();
    return summary;
}

} // namespace rolemine
