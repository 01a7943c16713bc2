#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "surgact/tensor.hpp"
#include "surgact/trial.hpp"

namespace surgact {

// Synthetic trial generator for dataset-free testing. Each gesture segment
// carries a class-conditioned feature mean plus Gaussian noise; trajectories
// are class-conditioned levels with a sinusoid and a ramp on top. Amplitude
// and slope of zero give constant-per-segment trajectories.
struct SynthConfig {
    int n_classes = 6;
    Index feature_dim = 14;
    Index min_segment = 20;     // frames at 30 Hz
    Index max_segment = 40;
    Index trial_len = 240;
    Index gap_frames = 0;       // unlabeled frames inserted between segments
    double noise_sigma = 0.1;
    double traj_amplitude_mm = 3.0;
    double traj_slope_mm = 2.0;   // per second
    std::uint64_t pattern_seed = 7;  // fixes class means/levels across a corpus
};

// Corpus-level generative ground truth, shared by all trials drawn from the
// same pattern seed.
struct SynthTruth {
    Mat class_means;   // n_classes x feature_dim
    Mat traj_levels;   // n_classes x 6, mm
    Mat traj_phases;   // n_classes x 6, radians
    Mat traj_slopes;   // n_classes x 6, signed mm/s
};

SynthTruth synth_truth(const SynthConfig& cfg);

LabeledTrial synthesize_trial(const SynthConfig& cfg, std::uint64_t seed, const std::string& subject_id,
                              const std::string& trial_id);

// subjects x trials_per_subject trials, seeded hierarchically from `seed`.
std::vector<LabeledTrial> synthesize_corpus(const SynthConfig& cfg, int subjects,
                                            int trials_per_subject, std::uint64_t seed);

}  // namespace surgact
