#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dbcs/csv.hpp"
#include "dbcs/experiment.hpp"
#include "dbcs/io_util.hpp"
#include "dbcs/json_io.hpp"
#include "dbcs/synth.hpp"

namespace {

using namespace dbcs;

struct CommandConfig {
    std::string data, precision, rankings, dag, models, out;
    double theta = 0.5;
    int k = 4;
    std::uint64_t seed = 0;
    std::vector<double> ratios = {0.70, 0.15, 0.15};
    int feature_width = 1;
    std::size_t row = 0;
    // synth shape
    int channels = 14;
    int tasks = 3;
    int samples_per_task = 500;
    int first_channel = 4;
    double separation = 3.0;
    double sigma = 1.0;
    std::string informative;
};

ClassifierConfig classifier_config(const CommandConfig& c) {
    if (c.ratios.size() != 3)
        throw ValidationError("--ratios needs exactly three values a,b,c");
    ClassifierConfig cfg;
    cfg.k = c.k;
    cfg.split = SplitSpec{c.ratios[0], c.ratios[1], c.ratios[2], c.seed};
    return cfg;
}

Dataset load_validated_dataset(const std::string& path) {
    Dataset ds = read_dataset_csv(path);
    const auto report = validate_dataset(ds);
    if (!report.valid()) {
        std::string msg = "invalid dataset " + path + ":";
        for (const auto& v : report.violations)
            msg += "\n  " + v;
        throw ValidationError(msg);
    }
    return ds;
}

std::string out_stem(const std::string& out) {
    if (out.size() > 5 && out.ends_with(".json"))
        return out.substr(0, out.size() - 5);
    return out;
}

// "4,5,6;7,8,9" -> one channel list per task
std::vector<std::vector<int>> parse_informative(const std::string& text) {
    std::vector<std::vector<int>> out;
    if (text.empty())
        return out;
    std::vector<int> current;
    std::string token;
    auto flush_token = [&]() {
        if (!token.empty()) {
            current.push_back(std::stoi(token));
            token.clear();
        }
    };
    for (char ch : text) {
        if (ch == ',') {
            flush_token();
        } else if (ch == ';') {
            flush_token();
            out.push_back(std::move(current));
            current.clear();
        } else {
            token += ch;
        }
    }
    flush_token();
    out.push_back(std::move(current));
    return out;
}

void write_report_files(const std::string& out, const EvalReport& report) {
    write_file_atomic(out, eval_report_to_json(report));
    const std::string stem = out_stem(out);
    write_file_atomic(stem + ".txt", report_text(report));
    write_file_atomic(stem + ".hist.csv", histogram_csv(report));
}

void run_rank(const CommandConfig& c) {
    const Dataset ds = load_validated_dataset(c.data);
    const PrecisionTable pt = rank_channels(ds, classifier_config(c));
    write_file_atomic(c.out, precision_table_to_json(pt));
    log_line("ranked " + std::to_string(pt.channels.size()) + " channels");
}

void run_rankings(const CommandConfig& c) {
    const PrecisionTable pt = load_precision_table(c.precision);
    const RankingBundle bundle = build_ranking_sets(pt);
    write_file_atomic(c.out, ranking_bundle_to_json(bundle));
}

void run_build_dag(const CommandConfig& c) {
    RankingBundle bundle;
    if (!c.rankings.empty())
        bundle = load_ranking_bundle(c.rankings);
    else if (!c.precision.empty())
        bundle = build_ranking_sets(load_precision_table(c.precision));
    else
        throw ValidationError("build-dag needs --rankings or --precision");
    const LayeredDag dag = build_dag(bundle.root, bundle.rankings);
    write_file_atomic(c.out, dag_to_json(dag));
    log_line("built DAG with " + std::to_string(dag.layers.size()) + " layers");
}

void run_train(const CommandConfig& c) {
    const Dataset ds = load_validated_dataset(c.data);
    const LayeredDag dag = load_dag(c.dag);
    const ClassifierConfig cfg = classifier_config(c);
    const auto folds = split(ds, cfg.split);
    const ConfidenceRegistry reg = train_registry(folds.train, dag, cfg);
    save_registry(c.out, reg);
    log_line("trained " + std::to_string(reg.models().size()) + " subset models");
}

void run_select(const CommandConfig& c) {
    const ConfidenceRegistry reg = load_registry(c.models);
    const LayeredDag dag = load_dag(c.dag);
    const Dataset rows = read_dataset_csv(c.data);  // labels ignored; rows are queries
    if (c.row >= rows.samples.size())
        throw ValidationError("--row " + std::to_string(c.row) + " out of range for " +
                              std::to_string(rows.samples.size()) + " rows");
    const SelectionResult result =
        dbcs_select(dag, reg, row_readings(rows, c.row), c.theta);
    write_file_atomic(c.out, selection_result_to_json(result, reg.training_fold().tasks));
}

void run_eval(const CommandConfig& c) {
    const ConfidenceRegistry reg = load_registry(c.models);
    const LayeredDag dag = load_dag(c.dag);
    const Dataset ds = load_validated_dataset(c.data);
    // The registry remembers its split; the test fold follows it.
    const auto folds = split(ds, reg.config().split);
    const EvalReport report = run_experiment(dag, reg, folds.test, c.theta);
    write_report_files(c.out, report);
    log_line("evaluated " + std::to_string(report.samples) + " samples");
}

void run_baseline(const CommandConfig& c) {
    const Dataset ds = load_validated_dataset(c.data);
    const ClassifierConfig cfg = classifier_config(c);
    const auto folds = split(ds, cfg.split);
    const LazyRegistry reg(folds.train, cfg);
    const EvalReport report = baseline_experiment(ds.channels, reg, folds.test, c.theta);
    write_report_files(c.out, report);
}

void run_synth(const CommandConfig& c) {
    SynthSpec spec = informative_spec(c.channels, c.tasks, c.samples_per_task,
                                      parse_informative(c.informative), c.separation, c.sigma,
                                      c.seed, c.first_channel);
    spec.feature_width = c.feature_width;
    const Dataset ds = generate_synthetic(spec);
    write_dataset_csv(c.out, ds);
    log_line("generated " + std::to_string(ds.samples.size()) + " samples");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DAG-based sensor channel selection for multi-channel signal classification"};
    app.require_subcommand(1);
    CommandConfig c;

    auto add_split_flags = [&](CLI::App* cmd) {
        cmd->add_option("--k", c.k, "neighbor count for the k-NN models");
        cmd->add_option("--seed", c.seed, "split/generator seed");
        cmd->add_option("--ratios", c.ratios, "train,val,test ratios")->delimiter(',');
    };

    CLI::App* rank = app.add_subcommand("rank", "dataset CSV -> per-channel precision table");
    rank->add_option("--data", c.data, "dataset CSV")->required();
    rank->add_option("--out", c.out, "precision table JSON")->required();
    add_split_flags(rank);

    CLI::App* rankings = app.add_subcommand("rankings", "precision table -> root + ranking sets");
    rankings->add_option("--precision", c.precision, "precision table JSON")->required();
    rankings->add_option("--out", c.out, "ranking bundle JSON")->required();

    CLI::App* builddag = app.add_subcommand("build-dag", "ranking sets -> layered DAG");
    builddag->add_option("--rankings", c.rankings, "ranking bundle JSON");
    builddag->add_option("--precision", c.precision, "precision table JSON (derives rankings)");
    builddag->add_option("--out", c.out, "DAG JSON")->required();

    CLI::App* train = app.add_subcommand("train", "dataset + DAG -> confidence registry");
    train->add_option("--data", c.data, "dataset CSV")->required();
    train->add_option("--dag", c.dag, "DAG JSON")->required();
    train->add_option("--out", c.out, "registry JSON")->required();
    add_split_flags(train);

    CLI::App* select = app.add_subcommand("select", "one readings row -> selection result");
    select->add_option("--models", c.models, "registry JSON")->required();
    select->add_option("--dag", c.dag, "DAG JSON")->required();
    select->add_option("--data", c.data, "readings CSV (label column ignored)")->required();
    select->add_option("--row", c.row, "row index (default 0)");
    select->add_option("--theta", c.theta, "stop threshold in (0,1]");
    select->add_option("--out", c.out, "selection result JSON")->required();

    CLI::App* eval = app.add_subcommand("eval", "test-fold experiment -> report");
    eval->add_option("--models", c.models, "registry JSON")->required();
    eval->add_option("--dag", c.dag, "DAG JSON")->required();
    eval->add_option("--data", c.data, "dataset CSV (test fold per registry split)")->required();
    eval->add_option("--theta", c.theta, "stop threshold in (0,1]");
    eval->add_option("--out", c.out, "report JSON (also writes .txt and .hist.csv)")->required();

    CLI::App* baseline = app.add_subcommand("baseline", "complete-graph greedy baseline");
    baseline->add_option("--data", c.data, "dataset CSV")->required();
    baseline->add_option("--theta", c.theta, "stop threshold in (0,1]");
    baseline->add_option("--out", c.out, "report JSON")->required();
    add_split_flags(baseline);

    CLI::App* synth = app.add_subcommand("synth", "generate a Gaussian synthetic dataset CSV");
    synth->add_option("--out", c.out, "dataset CSV")->required();
    synth->add_option("--channels", c.channels, "channel count");
    synth->add_option("--tasks", c.tasks, "task count");
    synth->add_option("--samples-per-task", c.samples_per_task, "samples per task");
    synth->add_option("--informative", c.informative,
                      "per-task informative channels, e.g. '4,5,6;7,8,9;10,11,12'");
    synth->add_option("--separation", c.separation, "mean offset of informative channels");
    synth->add_option("--sigma", c.sigma, "noise standard deviation");
    synth->add_option("--first-channel", c.first_channel, "first channel id");
    synth->add_option("--feature-width", c.feature_width, "features per channel");
    synth->add_option("--seed", c.seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (rank->parsed())
            run_rank(c);
        else if (rankings->parsed())
            run_rankings(c);
        else if (builddag->parsed())
            run_build_dag(c);
        else if (train->parsed())
            run_train(c);
        else if (select->parsed())
            run_select(c);
        else if (eval->parsed())
            run_eval(c);
        else if (baseline->parsed())
            run_baseline(c);
        else if (synth->parsed())
            run_synth(c);
        return 0;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
