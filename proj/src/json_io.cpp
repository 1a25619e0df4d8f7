#include "dbcs/json_io.hpp"

#include <set>

#include <json.hpp>

#include "dbcs/io_util.hpp"

namespace dbcs {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ValidationError("malformed JSON");
    return j;
}

json tasks_to_json(const std::vector<TaskId>& tasks) {
    json out = json::array();
    for (const TaskId& t : tasks)
        out.push_back(t.name);
    return out;
}

std::vector<TaskId> tasks_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw ValidationError("'tasks' must be a non-empty array of names");
    std::vector<TaskId> tasks;
    int index = 0;
    for (const auto& name : j)
        tasks.push_back(TaskId{index++, name.get<std::string>()});
    return tasks;
}

json channels_to_json(const std::vector<ChannelId>& channels) {
    json out = json::array();
    for (ChannelId c : channels)
        out.push_back(c.value);
    return out;
}

std::vector<ChannelId> channels_from_json(const json& j, const char* what) {
    if (!j.is_array())
        throw ValidationError(std::string(what) + " must be an array of channel ids");
    std::vector<ChannelId> out;
    for (const auto& v : j)
        out.push_back(ChannelId{v.get<int>()});
    return out;
}

json root_to_json(const RootSet& root) {
    json out = json::array();
    for (const RootMember& m : root.members)
        out.push_back(json{{"task", m.task.index}, {"channel", m.channel.value}});
    return out;
}

RootSet root_from_json(const json& j, const std::vector<TaskId>& tasks) {
    RootSet root;
    if (!j.is_array())
        throw ValidationError("'root' must be an array of {task, channel} objects");
    for (const auto& m : j) {
        const int t = m.at("task").get<int>();
        if (t < 0 || t >= static_cast<int>(tasks.size()))
            throw ValidationError("root member task index " + std::to_string(t) +
                                  " out of range");
        root.members.push_back({tasks[static_cast<std::size_t>(t)],
                                ChannelId{m.at("channel").get<int>()}});
    }
    return root;
}

double checked_fraction(const json& v, const char* what) {
    const double d = v.get<double>();
    if (!(d >= 0.0) || d > 1.0)
        throw ValidationError(std::string(what) + " value " + std::to_string(d) +
                              " outside [0,1]");
    return d;
}

}  // namespace

std::string precision_table_to_json(const PrecisionTable& pt) {
    json j;
    j["channels"] = channels_to_json(pt.channels);
    j["tasks"] = tasks_to_json(pt.tasks);
    j["precision"] = pt.precision;
    j["overall"] = pt.overall;
    return j.dump(2) + "\n";
}

PrecisionTable precision_table_from_json(const std::string& text) {
    const json j = parse(text);
    PrecisionTable pt;
    try {
        pt.channels = channels_from_json(j.at("channels"), "'channels'");
        pt.tasks = tasks_from_json(j.at("tasks"));
        for (const auto& row : j.at("precision")) {
            std::vector<double> r;
            for (const auto& v : row)
                r.push_back(checked_fraction(v, "precision"));
            pt.precision.push_back(std::move(r));
        }
        for (const auto& v : j.at("overall"))
            pt.overall.push_back(checked_fraction(v, "overall"));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad precision table JSON: ") + e.what());
    }
    if (pt.precision.size() != pt.channels.size() || pt.overall.size() != pt.channels.size())
        throw ValidationError("precision table has " + std::to_string(pt.precision.size()) +
                              " rows for " + std::to_string(pt.channels.size()) + " channels");
    for (const auto& row : pt.precision)
        if (row.size() != pt.tasks.size())
            throw ValidationError("incomplete precision row");
    return pt;
}

std::string ranking_bundle_to_json(const RankingBundle& bundle) {
    json j;
    json tasks = json::array();
    for (const RootMember& m : bundle.root.members)
        tasks.push_back(m.task.name);
    j["tasks"] = tasks;
    j["root"] = root_to_json(bundle.root);
    json rankings = json::array();
    for (const RankingSet& rs : bundle.rankings)
        rankings.push_back(json{{"task", rs.task.index}, {"ordered", channels_to_json(rs.ordered)}});
    j["rankings"] = rankings;
    return j.dump(2) + "\n";
}

RankingBundle ranking_bundle_from_json(const std::string& text) {
    const json j = parse(text);
    RankingBundle bundle;
    try {
        const auto tasks = tasks_from_json(j.at("tasks"));
        bundle.root = root_from_json(j.at("root"), tasks);
        for (const auto& rs : j.at("rankings")) {
            const int t = rs.at("task").get<int>();
            if (t < 0 || t >= static_cast<int>(tasks.size()))
                throw ValidationError("ranking set task index out of range");
            bundle.rankings.push_back({tasks[static_cast<std::size_t>(t)],
                                       channels_from_json(rs.at("ordered"), "'ordered'")});
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad ranking bundle JSON: ") + e.what());
    }
    return bundle;
}

std::string dag_to_json(const LayeredDag& dag) {
    json j;
    j["tasks"] = tasks_to_json(dag.tasks());
    j["root"] = root_to_json(dag.root);
    json layers = json::array();
    for (const auto& layer : dag.layers)
        layers.push_back(channels_to_json(layer));
    j["layers"] = layers;
    return j.dump(2) + "\n";
}

LayeredDag dag_from_json(const std::string& text) {
    const json j = parse(text);
    LayeredDag dag;
    try {
        const auto tasks = tasks_from_json(j.at("tasks"));
        dag.root = root_from_json(j.at("root"), tasks);
        for (const auto& layer : j.at("layers"))
            dag.layers.push_back(channels_from_json(layer, "layer"));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad DAG JSON: ") + e.what());
    }
    std::set<ChannelId> seen;
    for (ChannelId c : dag.all_channels())
        if (!seen.insert(c).second)
            throw ValidationError("duplicate channel " + std::to_string(c.value) + " in DAG");
    for (const auto& layer : dag.layers)
        if (layer.empty())
            throw ValidationError("DAG contains an empty layer");
    if (dag.root.members.empty())
        throw ValidationError("DAG has an empty root");
    return dag;
}

LayeredDag dag_roundtrip(const LayeredDag& dag) {
    return dag_from_json(dag_to_json(dag));
}

std::string selection_result_to_json(const SelectionResult& result,
                                     const std::vector<TaskId>& tasks) {
    json j;
    j["selected"] = channels_to_json(result.selected);
    j["pcv"] = result.pcv;
    if (result.predicted < 0 || result.predicted >= static_cast<int>(tasks.size()))
        throw ValidationError("predicted task index out of range");
    j["predicted"] = tasks[static_cast<std::size_t>(result.predicted)].name;
    j["stop_reason"] = to_string(result.stop_reason);
    j["probed"] = channels_to_json(result.probed);
    return j.dump(2) + "\n";
}

std::string eval_report_to_json(const EvalReport& report) {
    json j;
    j["samples"] = report.samples;
    j["overall_accuracy"] = report.overall_accuracy;
    json per_task = json::object();
    for (std::size_t t = 0; t < report.tasks.size(); ++t)
        per_task[report.tasks[t].name] = report.per_task_accuracy[t];
    j["per_task_accuracy"] = per_task;
    json hist = json::object();
    for (const auto& [size, fraction] : report.histogram)
        hist[std::to_string(size)] = fraction;
    j["histogram"] = hist;
    j["mean_channels"] = report.mean_channels;
    j["worst_case_channels"] = report.worst_case_channels;
    j["stop_reasons"] = report.stop_reasons;
    return j.dump(2) + "\n";
}

std::string registry_to_json(const ConfidenceRegistry& reg) {
    json j;
    j["format"] = kRegistryFormat;
    const ClassifierConfig& cfg = reg.config();
    j["config"] = {{"k", cfg.k},
                   {"seed", cfg.split.seed},
                   {"ratios", {cfg.split.train, cfg.split.val, cfg.split.test}}};
    j["fingerprint"] = reg.fingerprint();
    json keys = json::array();
    for (const auto& [key, model] : reg.models())
        keys.push_back(channels_to_json(key.channels));
    j["keys"] = keys;
    const Dataset& train = reg.training_fold();
    json samples = json::array();
    for (const Sample& s : train.samples)
        samples.push_back(json{{"x", s.features}, {"label", s.label}});
    j["train"] = {{"channels", channels_to_json(train.channels)},
                  {"feature_width", train.feature_width},
                  {"tasks", tasks_to_json(train.tasks)},
                  {"samples", std::move(samples)}};
    return j.dump(2) + "\n";
}

ConfidenceRegistry registry_from_json(const std::string& text) {
    const json j = parse(text);
    try {
        if (j.at("format").get<std::string>() != kRegistryFormat)
            throw ValidationError("unsupported registry format '" +
                                  j.at("format").get<std::string>() + "'");
        ClassifierConfig cfg;
        cfg.k = j.at("config").at("k").get<int>();
        cfg.split.seed = j.at("config").at("seed").get<std::uint64_t>();
        const auto& ratios = j.at("config").at("ratios");
        cfg.split.train = ratios.at(0).get<double>();
        cfg.split.val = ratios.at(1).get<double>();
        cfg.split.test = ratios.at(2).get<double>();

        Dataset train;
        const auto& tj = j.at("train");
        train.channels = channels_from_json(tj.at("channels"), "'train.channels'");
        train.feature_width = tj.at("feature_width").get<int>();
        train.tasks = tasks_from_json(tj.at("tasks"));
        for (const auto& sj : tj.at("samples")) {
            Sample s;
            s.features = sj.at("x").get<std::vector<double>>();
            s.label = sj.at("label").get<int>();
            train.samples.push_back(std::move(s));
        }

        const std::string fingerprint = j.at("fingerprint").get<std::string>();
        if (dataset_fingerprint(train) != fingerprint)
            throw ValidationError("registry fingerprint does not match its training fold");

        std::map<SubsetKey, SubsetModel> models;
        for (const auto& kj : j.at("keys")) {
            auto key = SubsetKey::of(channels_from_json(kj, "registry key"));
            models.emplace(key, fit_subset_model(train, key, cfg));
        }
        return ConfidenceRegistry(cfg, std::move(train), std::move(models));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad registry JSON: ") + e.what());
    }
}

void save_registry(const std::string& path, const ConfidenceRegistry& reg) {
    write_file_atomic(path, registry_to_json(reg));
}

ConfidenceRegistry load_registry(const std::string& path) {
    return registry_from_json(read_file(path));
}

PrecisionTable load_precision_table(const std::string& path) {
    return precision_table_from_json(read_file(path));
}

RankingBundle load_ranking_bundle(const std::string& path) {
    return ranking_bundle_from_json(read_file(path));
}

LayeredDag load_dag(const std::string& path) {
    return dag_from_json(read_file(path));
}

}  // namespace dbcs
