#include "surgact/synth.hpp"

#include <cmath>

#include "surgact/error.hpp"
#include "surgact/rng.hpp"

namespace surgact {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kFrameRate = 30.0;
}  // namespace

SynthTruth synth_truth(const SynthConfig& cfg) {
    Rng rng = Rng(cfg.pattern_seed).child(0xC1A55);
    SynthTruth truth;
    truth.class_means = Mat(cfg.n_classes, cfg.feature_dim);
    truth.traj_levels = Mat(cfg.n_classes, 6);
    truth.traj_phases = Mat(cfg.n_classes, 6);
    truth.traj_slopes = Mat(cfg.n_classes, 6);
    for (Index c = 0; c < cfg.n_classes; ++c) {
        for (Index j = 0; j < cfg.feature_dim; ++j) truth.class_means.at(c, j) = rng.uniform(-1.5, 1.5);
        for (Index j = 0; j < 6; ++j) {
            truth.traj_levels.at(c, j) = rng.uniform(-30.0, 30.0);
            truth.traj_phases.at(c, j) = rng.uniform(0.0, kTwoPi);
            truth.traj_slopes.at(c, j) = (rng.uniform() < 0.5 ? -1.0 : 1.0) * cfg.traj_slope_mm;
        }
    }
    return truth;
}

LabeledTrial synthesize_trial(const SynthConfig& cfg, std::uint64_t seed, const std::string& subject_id,
                              const std::string& trial_id) {
    if (cfg.n_classes < 2) throw ConfigError("synthesize_trial: need at least 2 classes");
    if (cfg.min_segment < 1 || cfg.max_segment < cfg.min_segment)
        throw ConfigError("synthesize_trial: bad segment length range");

    const SynthTruth truth = synth_truth(cfg);
    Rng rng(seed);

    LabeledTrial trial;
    trial.trial_id = trial_id;
    trial.subject_id = subject_id;
    trial.features = Mat(cfg.trial_len, cfg.feature_dim);
    trial.trajectory = Mat(cfg.trial_len, 6);
    trial.labels.assign(static_cast<std::size_t>(cfg.trial_len), kUnlabeled);

    Index t = 0;
    int prev_class = -1;
    while (t < cfg.trial_len) {
        Index seg_len = cfg.min_segment +
                        static_cast<Index>(rng.below(static_cast<std::uint64_t>(cfg.max_segment - cfg.min_segment + 1)));
        int cls = static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.n_classes)));
        if (cls == prev_class) cls = (cls + 1) % cfg.n_classes;
        prev_class = cls;
        const Index seg_start = t;
        for (Index k = 0; k < seg_len && t < cfg.trial_len; ++k, ++t) {
            trial.labels[static_cast<std::size_t>(t)] = cls + 1;  // gesture ids are 1-based
            for (Index j = 0; j < cfg.feature_dim; ++j)
                trial.features.at(t, j) =
                    truth.class_means.at(cls, j) + (cfg.noise_sigma > 0 ? rng.normal(0.0, cfg.noise_sigma) : 0.0);
            const double secs = static_cast<double>(t) / kFrameRate;
            const double local = static_cast<double>(t - seg_start) / kFrameRate;
            for (Index j = 0; j < 6; ++j) {
                trial.trajectory.at(t, j) =
                    truth.traj_levels.at(cls, j) +
                    cfg.traj_amplitude_mm * std::sin(kTwoPi * 0.5 * secs + truth.traj_phases.at(cls, j)) +
                    truth.traj_slopes.at(cls, j) * local;
            }
        }
        // optional unlabeled gap: features/trajectory freeze at the segment tail
        for (Index g = 0; g < cfg.gap_frames && t < cfg.trial_len; ++g, ++t) {
            for (Index j = 0; j < cfg.feature_dim; ++j)
                trial.features.at(t, j) = trial.features.at(t - 1, j);
            for (Index j = 0; j < 6; ++j) trial.trajectory.at(t, j) = trial.trajectory.at(t - 1, j);
        }
    }
    return trial;
}

std::vector<LabeledTrial> synthesize_corpus(const SynthConfig& cfg, int subjects, int trials_per_subject,
                                            std::uint64_t seed) {
    std::vector<LabeledTrial> corpus;
    Rng root(seed);
    for (int s = 0; s < subjects; ++s) {
        for (int k = 0; k < trials_per_subject; ++k) {
            const std::uint64_t trial_seed =
                root.child(static_cast<std::uint64_t>(s) * 1000 + static_cast<std::uint64_t>(k)).next_u64();
            corpus.push_back(synthesize_trial(cfg, trial_seed, "S" + std::to_string(s + 1),
                                              "S" + std::to_string(s + 1) + "_T" + std::to_string(k + 1)));
        }
    }
    return corpus;
}

}  // namespace surgact
