#include "surgact/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace surgact {

namespace {

std::string num(double v) {
    if (std::isnan(v)) return "NA";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

// NaN-skipping mean; NaN when every input is NaN.
double mean_of(const std::vector<double>& vals) {
    double sum = 0.0;
    Index n = 0;
    for (double v : vals) {
        if (std::isnan(v)) continue;
        sum += v;
        ++n;
    }
    return n > 0 ? sum / static_cast<double>(n) : std::numeric_limits<double>::quiet_NaN();
}

nlohmann::ordered_json traj_json(const TrajectoryErrors& t) {
    static const char* coords[6] = {"x1", "y1", "z1", "x2", "y2", "z2"};
    nlohmann::ordered_json j;
    for (int i = 0; i < 6; ++i) {
        nlohmann::ordered_json c;
        c["rmse_mm"] = std::isnan(t.rmse[i]) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(t.rmse[i]);
        c["mae_mm"] = std::isnan(t.mae[i]) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(t.mae[i]);
        c["mape_pct"] = std::isnan(t.mape[i]) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(t.mape[i]);
        j[coords[i]] = c;
    }
    return j;
}

nlohmann::ordered_json fold_json(const FoldReport& f) {
    nlohmann::ordered_json j;
    j["subject"] = f.subject;
    j["train_trials"] = f.train_trials;
    j["test_trials"] = f.test_trials;
    j["obs_windows"] = f.obs_windows;
    j["pred_windows"] = f.pred_windows;
    j["recognition"] = {{"accuracy_pct", f.recognition.frame_acc},
                        {"window_majority_accuracy_pct", f.recognition.window_majority_acc},
                        {"edit_score_pct", f.recognition.edit},
                        {"f1_10_pct", f.recognition.f1_10},
                        {"f1_25_pct", f.recognition.f1_25},
                        {"f1_50_pct", f.recognition.f1_50}};
    auto pred = [](const PredictionMetrics& p) {
        return nlohmann::ordered_json{{"accuracy_pct", p.frame_acc},
                                      {"edit_score_pct", p.edit},
                                      {"f1_10_pct", p.f1_10},
                                      {"f1_25_pct", p.f1_25},
                                      {"f1_50_pct", p.f1_50}};
    };
    j["prediction_ground_truth_gestures"] = pred(f.pred_gt);
    j["prediction_recognized_gestures"] = pred(f.pred_rec);
    j["trajectory_end_to_end"] = traj_json(f.trajectory);
    j["recognition_latency_ms"] = {{"mean", f.rec_latency.mean_ms},
                                   {"p50", f.rec_latency.p50_ms},
                                   {"p99", f.rec_latency.p99_ms},
                                   {"samples", f.rec_latency.samples}};
    j["end_to_end_latency_ms"] = {{"mean", f.e2e_latency.mean_ms},
                                  {"p50", f.e2e_latency.p50_ms},
                                  {"p99", f.e2e_latency.p99_ms},
                                  {"samples", f.e2e_latency.samples},
                                  {"over_budget", f.e2e_latency.over_budget}};
    return j;
}

void sanitize_nan(nlohmann::ordered_json& j) {
    if (j.is_number_float() && std::isnan(j.get<double>())) {
        j = nullptr;
    } else if (j.is_object() || j.is_array()) {
        for (auto& el : j) sanitize_nan(el);
    }
}

}  // namespace

FoldReport aggregate_folds(const std::vector<FoldReport>& folds) {
    FoldReport agg;
    agg.subject = "mean";
    auto collect = [&](auto getter) {
        std::vector<double> vals;
        for (const auto& f : folds) vals.push_back(getter(f));
        return mean_of(vals);
    };
    for (const auto& f : folds) {
        agg.train_trials += f.train_trials;
        agg.test_trials += f.test_trials;
        agg.obs_windows += f.obs_windows;
        agg.pred_windows += f.pred_windows;
    }
    agg.recognition.frame_acc = collect([](const FoldReport& f) { return f.recognition.frame_acc; });
    agg.recognition.window_majority_acc =
        collect([](const FoldReport& f) { return f.recognition.window_majority_acc; });
    agg.recognition.edit = collect([](const FoldReport& f) { return f.recognition.edit; });
    agg.recognition.f1_10 = collect([](const FoldReport& f) { return f.recognition.f1_10; });
    agg.recognition.f1_25 = collect([](const FoldReport& f) { return f.recognition.f1_25; });
    agg.recognition.f1_50 = collect([](const FoldReport& f) { return f.recognition.f1_50; });
    auto agg_pred = [&](auto member) {
        PredictionMetrics m;
        m.frame_acc = collect([&](const FoldReport& f) { return (f.*member).frame_acc; });
        m.edit = collect([&](const FoldReport& f) { return (f.*member).edit; });
        m.f1_10 = collect([&](const FoldReport& f) { return (f.*member).f1_10; });
        m.f1_25 = collect([&](const FoldReport& f) { return (f.*member).f1_25; });
        m.f1_50 = collect([&](const FoldReport& f) { return (f.*member).f1_50; });
        return m;
    };
    agg.pred_gt = agg_pred(&FoldReport::pred_gt);
    agg.pred_rec = agg_pred(&FoldReport::pred_rec);
    for (std::size_t c = 0; c < 6; ++c) {
        agg.trajectory.rmse[c] = collect([&](const FoldReport& f) { return f.trajectory.rmse[c]; });
        agg.trajectory.mae[c] = collect([&](const FoldReport& f) { return f.trajectory.mae[c]; });
        agg.trajectory.mape[c] = collect([&](const FoldReport& f) { return f.trajectory.mape[c]; });
    }
    agg.rec_latency.mean_ms = collect([](const FoldReport& f) { return f.rec_latency.mean_ms; });
    agg.rec_latency.p50_ms = collect([](const FoldReport& f) { return f.rec_latency.p50_ms; });
    agg.rec_latency.p99_ms = collect([](const FoldReport& f) { return f.rec_latency.p99_ms; });
    agg.e2e_latency.mean_ms = collect([](const FoldReport& f) { return f.e2e_latency.mean_ms; });
    agg.e2e_latency.p50_ms = collect([](const FoldReport& f) { return f.e2e_latency.p50_ms; });
    agg.e2e_latency.p99_ms = collect([](const FoldReport& f) { return f.e2e_latency.p99_ms; });
    for (const auto& f : folds) {
        agg.rec_latency.samples += f.rec_latency.samples;
        agg.e2e_latency.samples += f.e2e_latency.samples;
    }
    agg.e2e_latency.over_budget = agg.e2e_latency.mean_ms > kRealTimeBudgetMs;
    return agg;
}

std::string EvalReport::to_csv() const {
    std::ostringstream out;
    out << "fold,subject,train_trials,test_trials,obs_windows,pred_windows,"
           "rec_acc,rec_window_acc,rec_edit,rec_f1_10,rec_f1_25,rec_f1_50,"
           "predgt_acc,predgt_edit,predgt_f1_10,predgt_f1_25,predgt_f1_50,"
           "predrec_acc,predrec_edit,predrec_f1_10,predrec_f1_25,predrec_f1_50,"
           "rmse_x1,rmse_y1,rmse_z1,rmse_x2,rmse_y2,rmse_z2,"
           "mae_x1,mae_y1,mae_z1,mae_x2,mae_y2,mae_z2,"
           "mape_x1,mape_y1,mape_z1,mape_x2,mape_y2,mape_z2,"
           "rec_ms_mean,rec_ms_p50,rec_ms_p99,e2e_ms_mean,e2e_ms_p50,e2e_ms_p99,budget_ok\n";
    auto row = [&](const std::string& fold_id, const FoldReport& f) {
        out << fold_id << ',' << f.subject << ',' << f.train_trials << ',' << f.test_trials << ','
            << f.obs_windows << ',' << f.pred_windows << ',' << num(f.recognition.frame_acc) << ','
            << num(f.recognition.window_majority_acc) << ',' << num(f.recognition.edit) << ','
            << num(f.recognition.f1_10) << ',' << num(f.recognition.f1_25) << ','
            << num(f.recognition.f1_50) << ',' << num(f.pred_gt.frame_acc) << ',' << num(f.pred_gt.edit)
            << ',' << num(f.pred_gt.f1_10) << ',' << num(f.pred_gt.f1_25) << ',' << num(f.pred_gt.f1_50)
            << ',' << num(f.pred_rec.frame_acc) << ',' << num(f.pred_rec.edit) << ','
            << num(f.pred_rec.f1_10) << ',' << num(f.pred_rec.f1_25) << ',' << num(f.pred_rec.f1_50);
        for (double v : f.trajectory.rmse) out << ',' << num(v);
        for (double v : f.trajectory.mae) out << ',' << num(v);
        for (double v : f.trajectory.mape) out << ',' << num(v);
        out << ',' << num(f.rec_latency.mean_ms) << ',' << num(f.rec_latency.p50_ms) << ','
            << num(f.rec_latency.p99_ms) << ',' << num(f.e2e_latency.mean_ms) << ','
            << num(f.e2e_latency.p50_ms) << ',' << num(f.e2e_latency.p99_ms) << ','
            << (f.e2e_latency.over_budget ? "0" : "1") << '\n';
    };
    for (std::size_t i = 0; i < folds.size(); ++i) row(std::to_string(i), folds[i]);
    row("mean", aggregate);
    return out.str();
}

std::string EvalReport::to_json() const {
    nlohmann::ordered_json j;
    j["recognizer_params"] = recognizer_params;
    j["predictor_params"] = predictor_params;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    {
        std::istringstream in(config_text);
        std::string line;
        while (std::getline(in, line)) {
            const auto eq = line.find('=');
            if (eq != std::string::npos) cfg[line.substr(0, eq)] = line.substr(eq + 1);
        }
    }
    j["config"] = cfg;
    j["folds"] = nlohmann::ordered_json::array();
    for (const auto& f : folds) j["folds"].push_back(fold_json(f));
    j["aggregate"] = fold_json(aggregate);
    sanitize_nan(j);
    return j.dump(2) + "\n";
}

std::string EvalReport::summary() const {
    std::ostringstream out;
    auto pct = [](double v) {
        if (std::isnan(v)) return std::string("   NA");
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%5.1f", v);
        return std::string(buf);
    };
    out << "fold  subject        rec_acc  rec_edit  predgt_acc  predrec_acc  e2e_ms\n";
    auto line = [&](const std::string& id, const FoldReport& f) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-5s %-14s %s    %s     %s       %s      %7.3f\n", id.c_str(),
                      f.subject.c_str(), pct(f.recognition.frame_acc).c_str(),
                      pct(f.recognition.edit).c_str(), pct(f.pred_gt.frame_acc).c_str(),
                      pct(f.pred_rec.frame_acc).c_str(), f.e2e_latency.mean_ms);
        out << buf;
    };
    for (std::size_t i = 0; i < folds.size(); ++i) line(std::to_string(i), folds[i]);
    line("mean", aggregate);
    return out.str();
}

}  // namespace surgact
