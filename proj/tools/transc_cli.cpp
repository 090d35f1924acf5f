// Command-line front end for the embedding pipeline:
//   build-dataset  raw TSV export -> interned id files with splits
//   extend-m       augment valid/test isA splits by transitivity
//   train          learn embeddings, write checkpoint + config
//   eval-lp        link-prediction ranking metrics
//   fit-thresholds classification thresholds from the valid split
//   eval-tc        triple classification against fitted thresholds
//   infer          emit novel isA triples implied by the geometry
//   report         human-readable evaluation summary
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical abort.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "transc/transc.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// --data falls back to this environment variable as a convenience.
std::string default_data_dir() {
    const char* env = std::getenv("TRANSC_DATA");
    return env ? env : "";
}

fs::path checkpoint_file(const std::string& checkpoint) {
    fs::path p(checkpoint);
    if (fs::is_directory(p)) return p / "checkpoint.bin";
    return p;
}

transc::KnowledgeGraph load_data(const std::string& dir) {
    if (dir.empty())
        throw transc::DataError("no data directory: pass --data or set TRANSC_DATA");
    return transc::load_kg(dir);
}

void write_json(const json& j, const fs::path& path) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw transc::DataError("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

// Loads persisted evaluation negatives, or generates and persists them so
// later invocations (and reruns) score the same negative set.
transc::EvalNegatives negatives_for(const transc::KnowledgeGraph& kg, const std::string& dir,
                                    std::uint64_t seed) {
    if (transc::eval_negatives_exist(dir)) return transc::load_eval_negatives(kg, dir);
    transc::EvalNegatives negs = transc::generate_eval_negatives(kg, seed);
    transc::save_eval_negatives(negs, dir);
    return negs;
}

transc::SplitId parse_split(const std::string& s) {
    if (s == "valid") return transc::SplitId::Valid;
    if (s == "test") return transc::SplitId::Test;
    throw transc::DataError("unknown split '" + s + "' (expected valid or test)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Knowledge-graph embeddings with spherical concepts"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file mirroring the flags; flags take precedence");
    app.allow_config_extras(false);

    // ---- build-dataset ----
    std::string raw_relational, raw_instance_of, raw_sub_class_of, build_out;
    long sample_size = -1;
    double valid_ratio = 0.0, test_ratio = 0.0;
    std::uint64_t build_seed = 42;
    auto* build = app.add_subcommand("build-dataset", "Construct an id-interned dataset from raw TSVs");
    build->add_option("--relational", raw_relational, "raw head<TAB>relation<TAB>tail TSV")->required();
    build->add_option("--instance-of", raw_instance_of, "raw instance<TAB>concept TSV")->required();
    build->add_option("--sub-class-of", raw_sub_class_of, "raw sub<TAB>super TSV")->required();
    build->add_option("--sample", sample_size, "relational triples to sample (-1 = all)");
    build->add_option("--valid-ratio", valid_ratio, "fraction of each kind held out for validation");
    build->add_option("--test-ratio", test_ratio, "fraction of each kind held out for testing");
    build->add_option("--seed", build_seed, "root random seed");
    build->add_option("--out", build_out, "output dataset directory")->required();

    // ---- extend-m ----
    std::string extend_data = default_data_dir(), extend_out;
    bool fixpoint = false;
    auto* extend = app.add_subcommand("extend-m", "Extend valid/test isA splits by transitivity");
    extend->add_option("--data", extend_data, "dataset directory");
    extend->add_flag("--fixpoint", fixpoint, "iterate derivation to closure instead of one hop");
    extend->add_option("--out", extend_out, "output dataset directory")->required();

    // ---- train ----
    transc::TrainConfig config;
    std::string train_data = default_data_dir(), sampling = "bern", mode = "transc";
    auto* tr = app.add_subcommand("train", "Train embeddings");
    tr->add_option("--data", train_data, "dataset directory");
    tr->add_option("--dim", config.dim, "embedding dimension");
    tr->add_option("--lr", config.lr, "learning rate");
    tr->add_option("--margin-l", config.margin_l, "relational margin");
    tr->add_option("--margin-e", config.margin_e, "instanceOf margin");
    tr->add_option("--margin-c", config.margin_c, "subClassOf margin");
    tr->add_option("--epochs", config.epochs, "training epochs");
    tr->add_option("--batch-size", config.batch_size, "SGD batch size");
    tr->add_option("--sampling", sampling, "negative sampling: unif or bern");
    tr->add_option("--mode", mode, "transc (spheres) or transe (vector baseline)");
    tr->add_option("--seed", config.seed, "root random seed");
    tr->add_option("--threads", config.threads, "worker threads (1 = deterministic)");
    tr->add_option("--checkpoint-interval", config.checkpoint_interval,
                   "epochs between checkpoints (0 = final only)");
    tr->add_option("--out", config.out_dir, "checkpoint directory")->required();

    // ---- eval-lp ----
    std::string lp_checkpoint, lp_data = default_data_dir(), lp_split = "test", lp_out;
    int lp_threads = 1;
    auto* lp = app.add_subcommand("eval-lp", "Link-prediction ranking metrics");
    lp->add_option("--checkpoint", lp_checkpoint, "checkpoint file or directory")->required();
    lp->add_option("--data", lp_data, "dataset directory");
    lp->add_option("--split", lp_split, "valid or test");
    lp->add_option("--threads", lp_threads, "evaluation threads");
    lp->add_option("--out", lp_out, "directory for lp_report.json and ranks.csv");

    // ---- fit-thresholds ----
    std::string ft_checkpoint, ft_data = default_data_dir(), ft_out;
    std::uint64_t ft_seed = 42;
    auto* ft = app.add_subcommand("fit-thresholds",
                                  "Fit classification thresholds on the valid split");
    ft->add_option("--checkpoint", ft_checkpoint, "checkpoint file or directory")->required();
    ft->add_option("--data", ft_data, "dataset directory");
    ft->add_option("--seed", ft_seed, "seed for generated evaluation negatives");
    ft->add_option("--out", ft_out, "directory for thresholds.json and negative files")->required();

    // ---- eval-tc ----
    std::string tc_checkpoint, tc_data = default_data_dir(), tc_thresholds, tc_negatives,
                tc_split = "test", tc_out;
    std::uint64_t tc_seed = 42;
    auto* tc = app.add_subcommand("eval-tc", "Triple classification metrics");
    tc->add_option("--checkpoint", tc_checkpoint, "checkpoint file or directory")->required();
    tc->add_option("--data", tc_data, "dataset directory");
    tc->add_option("--thresholds", tc_thresholds, "thresholds.json from fit-thresholds")->required();
    tc->add_option("--negatives", tc_negatives, "directory holding *_neg.txt files");
    tc->add_option("--split", tc_split, "valid or test");
    tc->add_option("--seed", tc_seed, "seed if negatives must be generated");
    tc->add_option("--out", tc_out, "directory for tc_report.json");

    // ---- infer ----
    std::string in_checkpoint, in_data = default_data_dir(), in_kind = "both", in_out;
    double slack = 0.0;
    int in_threads = 1;
    auto* infer = app.add_subcommand("infer", "Emit novel isA triples implied by the geometry");
    infer->add_option("--checkpoint", in_checkpoint, "checkpoint file or directory")->required();
    infer->add_option("--data", in_data, "dataset directory");
    infer->add_option("--kind", in_kind, "instanceOf, subClassOf, or both");
    infer->add_option("--slack", slack, "require score <= -slack");
    infer->add_option("--threads", in_threads, "inference threads");
    infer->add_option("--out", in_out, "output directory for inferred TSVs")->required();

    // ---- report ----
    std::string rp_checkpoint, rp_data = default_data_dir(), rp_thresholds, rp_negatives,
                rp_split = "test";
    std::uint64_t rp_seed = 42;
    int rp_threads = 1;
    auto* rp = app.add_subcommand("report", "Render evaluation tables for a checkpoint");
    rp->add_option("--checkpoint", rp_checkpoint, "checkpoint file or directory")->required();
    rp->add_option("--data", rp_data, "dataset directory");
    rp->add_option("--thresholds", rp_thresholds, "thresholds.json (refitted when omitted)");
    rp->add_option("--negatives", rp_negatives, "directory holding *_neg.txt files");
    rp->add_option("--split", rp_split, "valid or test");
    rp->add_option("--seed", rp_seed, "seed if negatives must be generated");
    rp->add_option("--threads", rp_threads, "evaluation threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // 0 covers --help/--version
    }

    try {
        if (build->parsed()) {
            transc::RawExport raw =
                transc::load_raw_export(raw_relational, raw_instance_of, raw_sub_class_of);
            transc::KnowledgeGraph kg = transc::build_subset(raw, sample_size, build_seed);
            transc::SplitCounts counts =
                transc::SplitCounts::from_ratios(kg, valid_ratio, test_ratio);
            transc::SplitReport report = transc::split_kg(kg, counts, build_seed);
            transc::save_kg(kg, build_out);
            json summary = {{"instances", kg.instances.size()},
                            {"concepts", kg.concepts.size()},
                            {"relations", kg.relations.size()},
                            {"relational",
                             {{"train", kg.relational.train.size()},
                              {"valid", kg.relational.valid.size()},
                              {"test", kg.relational.test.size()}}},
                            {"instanceOf",
                             {{"train", kg.instance_of.train.size()},
                              {"valid", kg.instance_of.valid.size()},
                              {"test", kg.instance_of.test.size()}}},
                            {"subClassOf",
                             {{"train", kg.sub_class_of.train.size()},
                              {"valid", kg.sub_class_of.valid.size()},
                              {"test", kg.sub_class_of.test.size()}}},
                            {"unseen_in_train",
                             {{"instances", report.unseen_instances},
                              {"concepts", report.unseen_concepts},
                              {"relations", report.unseen_relations}}}};
            std::cout << summary.dump(2) << "\n";
        } else if (extend->parsed()) {
            transc::KnowledgeGraph kg = load_data(extend_data);
            transc::MExtensionCounts counts = transc::build_m_extension(kg, fixpoint);
            transc::save_kg(kg, extend_out);
            json summary = {{"instanceOf_added", counts.instance_of_added},
                            {"subClassOf_added", counts.sub_class_of_added}};
            std::cout << summary.dump(2) << "\n";
        } else if (tr->parsed()) {
            config.strategy = transc::parse_strategy(sampling);
            config.mode = transc::parse_mode(mode);
            transc::KnowledgeGraph kg = load_data(train_data);
            transc::TrainState state =
                transc::train(kg, config, [](int epoch, const transc::EpochLoss& loss) {
                    if (epoch % 100 == 0)
                        std::cerr << "epoch " << epoch << " loss " << loss.total() << "\n";
                });
            std::cout << "wrote " << (fs::path(config.out_dir) / "checkpoint.bin").string()
                      << " after " << state.epoch << " epochs\n";
        } else if (lp->parsed()) {
            transc::KnowledgeGraph kg = load_data(lp_data);
            transc::EmbeddingSpace space = transc::load_checkpoint(checkpoint_file(lp_checkpoint));
            transc::LinkPredictionReport report =
                transc::link_prediction(space, kg, parse_split(lp_split), lp_threads);
            std::cout << transc::to_json(report).dump(2) << "\n";
            if (!lp_out.empty()) {
                fs::create_directories(lp_out);
                write_json(transc::to_json(report), fs::path(lp_out) / "lp_report.json");
                transc::write_ranks_csv(report, kg, fs::path(lp_out) / "ranks.csv");
            }
        } else if (ft->parsed()) {
            transc::KnowledgeGraph kg = load_data(ft_data);
            transc::EmbeddingSpace space = transc::load_checkpoint(checkpoint_file(ft_checkpoint));
            fs::create_directories(ft_out);
            transc::EvalNegatives negs = negatives_for(kg, ft_out, ft_seed);
            transc::ThresholdTable table = transc::fit_thresholds(space, kg, negs);
            write_json(transc::to_json(table, kg), fs::path(ft_out) / "thresholds.json");
            std::cout << transc::to_json(table, kg).dump(2) << "\n";
        } else if (tc->parsed()) {
            transc::KnowledgeGraph kg = load_data(tc_data);
            transc::EmbeddingSpace space = transc::load_checkpoint(checkpoint_file(tc_checkpoint));
            std::ifstream in(tc_thresholds);
            if (!in) throw transc::DataError("cannot open " + tc_thresholds);
            transc::ThresholdTable table =
                transc::thresholds_from_json(json::parse(in), kg);
            std::string neg_dir = tc_negatives.empty()
                                      ? fs::path(tc_thresholds).parent_path().string()
                                      : tc_negatives;
            transc::EvalNegatives negs = negatives_for(kg, neg_dir, tc_seed);
            transc::ClassificationReport report =
                transc::triple_classification(space, kg, table, negs, parse_split(tc_split));
            std::cout << transc::to_json(report).dump(2) << "\n";
            if (!tc_out.empty()) write_json(transc::to_json(report), fs::path(tc_out) / "tc_report.json");
        } else if (infer->parsed()) {
            transc::KnowledgeGraph kg = load_data(in_data);
            transc::EmbeddingSpace space = transc::load_checkpoint(checkpoint_file(in_checkpoint));
            fs::create_directories(in_out);
            if (in_kind != "instanceOf" && in_kind != "subClassOf" && in_kind != "both")
                throw transc::DataError("unknown kind '" + in_kind + "'");
            if (in_kind != "subClassOf") {
                auto triples = transc::infer_instance_of(space, kg, slack, in_threads);
                transc::write_inferred_tsv(triples, kg.instances, kg.concepts,
                                           fs::path(in_out) / "inferred_instanceOf.tsv");
                std::cout << triples.size() << " inferred instanceOf triples\n";
            }
            if (in_kind != "instanceOf") {
                auto triples = transc::infer_sub_class_of(space, kg, slack, in_threads);
                transc::write_inferred_tsv(triples, kg.concepts, kg.concepts,
                                           fs::path(in_out) / "inferred_subClassOf.tsv");
                std::cout << triples.size() << " inferred subClassOf triples\n";
            }
        } else if (rp->parsed()) {
            transc::KnowledgeGraph kg = load_data(rp_data);
            transc::EmbeddingSpace space = transc::load_checkpoint(checkpoint_file(rp_checkpoint));
            std::string neg_dir = rp_negatives.empty() ? rp_data : rp_negatives;
            transc::EvalNegatives negs = negatives_for(kg, neg_dir, rp_seed);
            transc::ThresholdTable table;
            if (rp_thresholds.empty()) {
                table = transc::fit_thresholds(space, kg, negs);
            } else {
                std::ifstream in(rp_thresholds);
                if (!in) throw transc::DataError("cannot open " + rp_thresholds);
                table = transc::thresholds_from_json(json::parse(in), kg);
            }
            transc::SplitId split = parse_split(rp_split);
            transc::LinkPredictionReport lp_report =
                transc::link_prediction(space, kg, split, rp_threads);
            transc::ClassificationReport tc_report =
                transc::triple_classification(space, kg, table, negs, split);
            std::cout << "link prediction (" << rp_split << ")\n"
                      << transc::render_link_prediction_table(lp_report) << "\n"
                      << "triple classification (" << rp_split << ")\n"
                      << transc::render_classification_table(tc_report);
        }
    } catch (const transc::NumericalError& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 3;
    } catch (const transc::ContractViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
