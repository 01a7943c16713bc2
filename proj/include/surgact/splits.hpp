#pragma once

#include <string>
#include <vector>

#include "surgact/trial.hpp"

namespace surgact {

// One leave-one-user-out fold: all trials of `subject` form the test set.
struct LouoFold {
    std::string subject;
    std::vector<std::size_t> train_idx;
    std::vector<std::size_t> test_idx;
};

// One fold per subject, ordered by subject id. Folds partition the trial
// set; a single-subject corpus is a configuration error.
std::vector<LouoFold> louo_splits(const std::vector<LabeledTrial>& trials);

}  // namespace surgact
