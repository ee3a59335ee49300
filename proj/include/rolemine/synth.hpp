#pragma once

#include "rolemine/event_store.hpp"
#include "rolemine/time_window.hpp"

#include <cstdint>

namespace rolemine {

/// Synthetic fixture: event traffic for a population of contributors whose
/// activity is driven by three latent intensities (coding, discussing,
/// administering) through five archetypes, two of them far more active
/// than the rest. Useful for end-to-end runs with a known planted
/// structure. Deterministic for a fixed seed.
struct SynthOptions {
    int contributors = 1000;
    std::uint64_t seed = 20180101;
    ProjectRef project{"synth", "fixture"};
};

struct SynthSummary {
    std::size_t events = 0;
    int contributors = 0;
    int periods = 0;
};

SynthSummary generate_synthetic_store(EventStore& store, const TimeWindow& window,
                                      const SynthOptions& options);

} // namespace rolemine
