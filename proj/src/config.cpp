#include "surgact/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "surgact/error.hpp"

namespace surgact {

namespace {

Index to_index(const std::string& key, const std::string& v) {
    try {
        return static_cast<Index>(std::stoll(v));
    } catch (const std::exception&) {
        throw ConfigError("config: " + key + " expects an integer, got '" + v + "'");
    }
}

double to_double(const std::string& key, const std::string& v) {
    try {
        return std::stod(v);
    } catch (const std::exception&) {
        throw ConfigError("config: " + key + " expects a number, got '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: " + key + " expects a boolean, got '" + v + "'");
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void TrainConfig::set(const std::string& key, const std::string& value) {
    if (key == "features") selection = FeatureSelection::parse(value);
    else if (key == "w_obs") w_obs = to_index(key, value);
    else if (key == "w_pred") w_pred = to_index(key, value);
    else if (key == "downsample") downsample_factor = to_index(key, value);
    else if (key == "epochs") epochs = to_index(key, value);
    else if (key == "batch") batch_size = to_index(key, value);
    else if (key == "seed") seed = static_cast<std::uint64_t>(std::stoull(value));
    else if (key == "d_model") d_model = to_index(key, value);
    else if (key == "n_enc") n_enc = to_index(key, value);
    else if (key == "h_enc") h_enc = to_index(key, value);
    else if (key == "n_dec") n_dec = to_index(key, value);
    else if (key == "h_dec") h_dec = to_index(key, value);
    else if (key == "fc_dim") fc_dim = to_index(key, value);
    else if (key == "d_emb") d_emb = to_index(key, value);
    else if (key == "ffn_inner") ffn_inner = to_index(key, value);
    else if (key == "tcn_kernel") tcn_kernel = to_index(key, value);
    else if (key == "tcn_channels") {
        tcn_channels.clear();
        std::istringstream in(value);
        std::string tok;
        while (std::getline(in, tok, ','))
            if (!tok.empty()) tcn_channels.push_back(to_index(key, tok));
    } else if (key == "dropout") dropout = to_double(key, value);
    else if (key == "adam_beta1") adam_beta1 = to_double(key, value);
    else if (key == "adam_beta2") adam_beta2 = to_double(key, value);
    else if (key == "adam_eps") adam_eps = to_double(key, value);
    else if (key == "warmup") warmup_steps = to_index(key, value);
    else if (key == "w_gesture") w_gesture = to_double(key, value);
    else if (key == "w_traj") w_traj = to_double(key, value);
    else if (key == "pca_components") pca_components = to_index(key, value);
    else if (key == "traj_delta") traj_delta = to_bool(key, value);
    else if (key == "train_predictor") train_predictor = to_bool(key, value);
    else if (key == "predictor_gesture_source") {
        if (value != "ground_truth" && value != "recognized")
            throw ConfigError("config: predictor_gesture_source must be ground_truth or recognized");
        predictor_gesture_source = value;
    } else if (key == "measure_latency") measure_latency = to_bool(key, value);
    else if (key == "latency_warmup") latency_warmup = to_index(key, value);
    else throw ConfigError("config: unknown key '" + key + "'");
}

void TrainConfig::validate() const {
    if (!selection.any()) throw ConfigError("config: empty feature selection");
    if (epochs < 1) throw ConfigError("config: epochs must be >= 1");
    if (batch_size < 1) throw ConfigError("config: batch must be >= 1");
    if (w_obs < 1 || w_pred < 0 || downsample_factor < 1)
        throw ConfigError("config: bad window geometry");
    if (d_model % h_enc != 0)
        throw ConfigError("config: d_model " + std::to_string(d_model) + " not divisible by h_enc " +
                          std::to_string(h_enc));
    if (d_model % h_dec != 0)
        throw ConfigError("config: d_model " + std::to_string(d_model) + " not divisible by h_dec " +
                          std::to_string(h_dec));
    if (w_gesture < 0 || w_traj < 0 || (w_gesture == 0 && w_traj == 0))
        throw ConfigError("config: loss weights must be non-negative and not both zero");
    if (dropout < 0 || dropout >= 1) throw ConfigError("config: dropout must be in [0,1)");
}

std::string TrainConfig::serialize() const {
    std::ostringstream out;
    out << "features=" << selection.to_string() << "\n";
    out << "w_obs=" << w_obs << "\nw_pred=" << w_pred << "\ndownsample=" << downsample_factor << "\n";
    out << "epochs=" << epochs << "\nbatch=" << batch_size << "\nseed=" << seed << "\n";
    out << "d_model=" << d_model << "\nn_enc=" << n_enc << "\nh_enc=" << h_enc << "\n";
    out << "n_dec=" << n_dec << "\nh_dec=" << h_dec << "\nfc_dim=" << fc_dim << "\nd_emb=" << d_emb << "\n";
    out << "ffn_inner=" << ffn_inner << "\ntcn_kernel=" << tcn_kernel << "\ntcn_channels=";
    for (std::size_t i = 0; i < tcn_channels.size(); ++i) out << (i ? "," : "") << tcn_channels[i];
    out << "\ndropout=" << fmt_double(dropout) << "\n";
    out << "adam_beta1=" << fmt_double(adam_beta1) << "\nadam_beta2=" << fmt_double(adam_beta2)
        << "\nadam_eps=" << fmt_double(adam_eps) << "\nwarmup=" << warmup_steps << "\n";
    out << "w_gesture=" << fmt_double(w_gesture) << "\nw_traj=" << fmt_double(w_traj) << "\n";
    out << "pca_components=" << pca_components << "\ntraj_delta=" << (traj_delta ? "true" : "false")
        << "\n";
    out << "train_predictor=" << (train_predictor ? "true" : "false") << "\n";
    out << "predictor_gesture_source=" << predictor_gesture_source << "\n";
    out << "measure_latency=" << (measure_latency ? "true" : "false") << "\n";
    out << "latency_warmup=" << latency_warmup << "\n";
    return out.str();
}

RecognizerConfig TrainConfig::recognizer_config(Index d_in) const {
    RecognizerConfig rc;
    rc.d_in = d_in;
    rc.d_model = d_model;
    rc.n_enc = n_enc;
    rc.heads = h_enc;
    rc.fc_dim = fc_dim;
    rc.ffn_inner = ffn_dim();
    rc.w_obs = w_obs;
    rc.tcn_kernel = tcn_kernel;
    rc.tcn_channels = tcn_channels;
    rc.dropout = dropout;
    return rc;
}

PredictorConfig TrainConfig::predictor_config(Index d_in) const {
    PredictorConfig pc;
    pc.d_in = d_in;
    pc.d_model = d_model;
    pc.n_dec = n_dec;
    pc.heads = h_dec;
    pc.fc_dim = fc_dim;
    pc.d_emb = d_emb;
    pc.ffn_inner = ffn_dim();
    pc.w_pred = w_pred;
    pc.mem_len = mem_len();
    pc.ds_factor = downsample_factor;
    pc.dropout = dropout;
    pc.traj_delta = traj_delta;
    return pc;
}

TrainConfig parse_config_text(const std::string& text, const std::string& source_name) {
    TrainConfig cfg;
    std::istringstream in(text);
    std::string line;
    Index lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comment and whitespace
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)); };
        while (!line.empty() && is_space(line.front())) line.erase(0, 1);
        while (!line.empty() && is_space(line.back())) line.pop_back();
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(source_name + ": expected key=value at line " + std::to_string(lineno));
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        while (!key.empty() && is_space(key.back())) key.pop_back();
        while (!value.empty() && is_space(value.front())) value.erase(0, 1);
        cfg.set(key, value);
    }
    cfg.validate();
    return cfg;
}

TrainConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

LabelMap LabelMap::build(const std::vector<const LabeledTrial*>& trials, Index fc_dim) {
    std::set<int> ids;
    for (const auto* t : trials)
        for (int l : t->labels)
            if (l != kUnlabeled) ids.insert(l);
    if (ids.empty()) throw DataError("label map: no labeled frames in the training set");
    if (static_cast<Index>(ids.size()) > fc_dim)
        throw ConfigError("label map: " + std::to_string(ids.size()) +
                          " gesture classes exceed the fc_dim=" + std::to_string(fc_dim) + " head");
    LabelMap map;
    map.gesture_ids.assign(ids.begin(), ids.end());
    return map;
}

int LabelMap::to_class(int gesture_id) const {
    if (gesture_id == kUnlabeled) return -1;
    const auto it = std::lower_bound(gesture_ids.begin(), gesture_ids.end(), gesture_id);
    if (it == gesture_ids.end() || *it != gesture_id) return -1;
    return static_cast<int>(it - gesture_ids.begin());
}

int LabelMap::to_gesture(int class_index) const {
    if (class_index < 0 || class_index >= static_cast<int>(gesture_ids.size())) return kUnlabeled;
    return gesture_ids[static_cast<std::size_t>(class_index)];
}

std::vector<int> LabelMap::classes_of(const std::vector<int>& gesture_labels) const {
    std::vector<int> out(gesture_labels.size());
    for (std::size_t i = 0; i < gesture_labels.size(); ++i) out[i] = to_class(gesture_labels[i]);
    return out;
}

std::vector<int> LabelMap::gestures_of(const std::vector<int>& class_labels) const {
    std::vector<int> out(class_labels.size());
    for (std::size_t i = 0; i < class_labels.size(); ++i) out[i] = to_gesture(class_labels[i]);
    return out;
}

}  // namespace surgact
