#include "surgact/splits.hpp"

#include <algorithm>
#include <set>

#include "surgact/error.hpp"

namespace surgact {

std::vector<LouoFold> louo_splits(const std::vector<LabeledTrial>& trials) {
    std::set<std::string> subjects;
    for (const auto& t : trials) {
        if (t.subject_id.empty()) throw DataError("louo_splits: trial '" + t.trial_id + "' has no subject id");
        subjects.insert(t.subject_id);
    }
    if (subjects.size() < 2)
        throw ConfigError("louo_splits: need at least 2 subjects, got " +
                          std::to_string(subjects.size()));
    std::vector<LouoFold> folds;
    for (const auto& s : subjects) {
        LouoFold fold;
        fold.subject = s;
        for (std::size_t i = 0; i < trials.size(); ++i) {
            if (trials[i].subject_id == s)
                fold.test_idx.push_back(i);
            else
                fold.train_idx.push_back(i);
        }
        folds.push_back(std::move(fold));
    }
    return folds;
}

}  // namespace surgact
