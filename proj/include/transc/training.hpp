#pragma once

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>
#include <vector>

#include "json.hpp"
#include "transc/core.hpp"
#include "transc/geometry.hpp"
#include "transc/kg.hpp"
#include "transc/sampling.hpp"

namespace transc {

enum class Mode { TransC, TransEBaseline };

inline Mode parse_mode(const std::string& s) {
    if (s == "transc") return Mode::TransC;
    if (s == "transe") return Mode::TransEBaseline;
    throw DataError("unknown mode '" + s + "' (expected transc or transe)");
}

struct TrainConfig {
    int dim = 100;
    double lr = 0.001;
    double margin_l = 1.0;   // relational
    double margin_e = 0.1;   // instanceOf
    double margin_c = 1.0;   // subClassOf
    Strategy strategy = Strategy::Bern;
    int epochs = 1000;
    int batch_size = 512;
    std::uint64_t seed = 42;
    Mode mode = Mode::TransC;
    int threads = 1;
    int checkpoint_interval = 0;  // epochs between checkpoints; 0 = final only
    std::string out_dir;

    void validate() const {
        if (dim <= 0) throw DataError("dim must be positive");
        if (lr <= 0) throw DataError("learning rate must be positive");
        if (margin_l <= 0 || margin_e <= 0 || margin_c <= 0)
            throw DataError("margins must be positive");
        if (epochs < 0) throw DataError("epochs must be non-negative");
        if (batch_size <= 0) throw DataError("batch size must be positive");
        if (threads <= 0) throw DataError("threads must be positive");
    }
};

inline nlohmann::json config_to_json(const TrainConfig& c) {
    return {{"dim", c.dim},
            {"lr", c.lr},
            {"margin_l", c.margin_l},
            {"margin_e", c.margin_e},
            {"margin_c", c.margin_c},
            {"strategy", c.strategy == Strategy::Bern ? "bern" : "unif"},
            {"epochs", c.epochs},
            {"batch_size", c.batch_size},
            {"seed", c.seed},
            {"mode", c.mode == Mode::TransC ? "transc" : "transe"},
            {"threads", c.threads}};
}

struct EpochLoss {
    double instance_of = 0.0;
    double sub_class_of = 0.0;
    double relational = 0.0;
    double total() const { return instance_of + sub_class_of + relational; }
};

struct TrainState {
    EmbeddingSpace space;
    int epoch = 0;
    std::vector<EpochLoss> trace;
};

// One positive/negative pair, the unit of the SGD update.
struct TrainPair {
    TripleKind kind;
    RelTriple pos_rel, neg_rel;
    IsaTriple pos_isa, neg_isa;
};

inline double hinge(double positive_score, double negative_score, double margin) {
    return std::max(0.0, margin + positive_score - negative_score);
}

// Uniform per-coordinate init in [-6/sqrt(k), 6/sqrt(k)], projected into the
// unit ball; radii start in [radius_floor, 0.5 + radius_floor).
inline EmbeddingSpace init_space(int num_instances, int num_concepts, int num_relations,
                                 const TrainConfig& config, Rng& rng) {
    EmbeddingSpace space(config.dim, num_instances, num_concepts, num_relations);
    const double bound = 6.0 / std::sqrt(static_cast<double>(config.dim));
    std::uniform_real_distribution<double> coord(-bound, bound);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (double& x : space.instance_data()) x = coord(rng);
    for (double& x : space.relation_data()) x = coord(rng);
    for (double& x : space.center_data()) x = coord(rng);
    for (double& m : space.radius_data()) m = 0.5 * unit(rng) + kRadiusFloor;

    for (int i = 0; i < num_instances; ++i) project_unit_ball(space.instance(i));
    for (int r = 0; r < num_relations; ++r) project_unit_ball(space.relation(r));
    for (int c = 0; c < num_concepts; ++c) project_unit_ball(space.center(c));
    return space;
}

namespace detail {

// Positive and negative triples in a pair share entities, so both gradients
// are evaluated against the same pre-step state (the `*_direction` helpers)
// and only then applied. sign = +1 for the positive triple, -1 for the
// negative one; the update is param -= lr * sign * df/dparam. The
// subgradient of ||x|| at 0 is taken as 0 (a zero direction vector).

// Unit vector (i - p) / ||i - p|| of f_e's center-distance term.
inline std::vector<double> instance_of_direction(const EmbeddingSpace& space, const IsaTriple& t) {
    auto i = space.instance(t.sub);
    auto p = space.center(t.sup);
    std::vector<double> dir(i.size(), 0.0);
    double d = l2_dist(i, p);
    if (d > 0.0)
        for (std::size_t k = 0; k < i.size(); ++k) dir[k] = (i[k] - p[k]) / d;
    return dir;
}

inline void apply_instance_of(EmbeddingSpace& space, const IsaTriple& t,
                              const std::vector<double>& dir, double sign, double lr) {
    auto i = space.instance(t.sub);
    auto p = space.center(t.sup);
    for (std::size_t k = 0; k < i.size(); ++k) {
        double u = dir[k] * lr * sign;
        i[k] -= u;
        p[k] += u;
    }
    space.radius(t.sup) += lr * sign;  // df/dm = -1
}

inline void grad_instance_of(EmbeddingSpace& space, const IsaTriple& t, double sign, double lr) {
    apply_instance_of(space, t, instance_of_direction(space, t), sign, lr);
}

// Unit vector (p_i - p_j) / d of f_c's center-distance term; zero in the
// Contains case, whose formula drops that term. The case is frozen at the
// pre-step classification.
inline std::vector<double> sub_class_of_direction(const EmbeddingSpace& space,
                                                  const IsaTriple& t) {
    auto pi = space.center(t.sub);
    auto pj = space.center(t.sup);
    std::vector<double> dir(pi.size(), 0.0);
    bool contains = classify_spheres(pi, space.radius(t.sub), pj, space.radius(t.sup)) ==
                    SpherePosition::Contains;
    if (!contains) {
        double d = l2_dist(pi, pj);
        if (d > 0.0)
            for (std::size_t k = 0; k < pi.size(); ++k) dir[k] = (pi[k] - pj[k]) / d;
    }
    return dir;
}

inline void apply_sub_class_of(EmbeddingSpace& space, const IsaTriple& t,
                               const std::vector<double>& dir, double sign, double lr) {
    auto pi = space.center(t.sub);
    auto pj = space.center(t.sup);
    for (std::size_t k = 0; k < pi.size(); ++k) {
        double u = dir[k] * lr * sign;
        pi[k] -= u;
        pj[k] += u;
    }
    space.radius(t.sub) -= lr * sign;  // df/dm_i = +1
    space.radius(t.sup) += lr * sign;  // df/dm_j = -1
}

inline void grad_sub_class_of(EmbeddingSpace& space, const IsaTriple& t, double sign, double lr) {
    apply_sub_class_of(space, t, sub_class_of_direction(space, t), sign, lr);
}

// Residual h + r - t; the gradient of f_r is 2 * residual.
inline std::vector<double> relational_residual(const EmbeddingSpace& space, const RelTriple& t) {
    auto h = space.instance(t.head);
    auto r = space.relation(t.relation);
    auto tl = space.instance(t.tail);
    std::vector<double> res(h.size());
    for (std::size_t k = 0; k < h.size(); ++k) res[k] = h[k] + r[k] - tl[k];
    return res;
}

inline void apply_relational(EmbeddingSpace& space, const RelTriple& t,
                             const std::vector<double>& res, double sign, double lr) {
    auto h = space.instance(t.head);
    auto r = space.relation(t.relation);
    auto tl = space.instance(t.tail);
    double scale = 2.0 * lr * sign;
    for (std::size_t k = 0; k < h.size(); ++k) {
        double g = res[k] * scale;
        h[k] -= g;
        r[k] -= g;
        tl[k] += g;
    }
}

inline void grad_relational(EmbeddingSpace& space, const RelTriple& t, double sign, double lr) {
    apply_relational(space, t, relational_residual(space, t), sign, lr);
}

inline void clamp_radius(EmbeddingSpace& space, int concept_id) {
    double& m = space.radius(concept_id);
    if (m < kRadiusFloor) m = kRadiusFloor;
    if (m > kRadiusCap) m = kRadiusCap;
}

}  // namespace detail

// Applies one pair's subgradient step and re-establishes the norm/radius
// invariants on every touched parameter. Returns the pair's hinge loss.
inline double step_pair(EmbeddingSpace& space, const TrainPair& pair, const TrainConfig& config) {
    switch (pair.kind) {
        case TripleKind::Relational: {
            double fp = score_relational(space.instance(pair.pos_rel.head),
                                         space.relation(pair.pos_rel.relation),
                                         space.instance(pair.pos_rel.tail));
            double fn = score_relational(space.instance(pair.neg_rel.head),
                                         space.relation(pair.neg_rel.relation),
                                         space.instance(pair.neg_rel.tail));
            if (!std::isfinite(fp) || !std::isfinite(fn))
                throw NumericalError("non-finite relational score at triple (" +
                                     std::to_string(pair.pos_rel.head) + ", " +
                                     std::to_string(pair.pos_rel.relation) + ", " +
                                     std::to_string(pair.pos_rel.tail) + ")");
            double loss = hinge(fp, fn, config.margin_l);
            if (loss > 0.0) {
                auto res_pos = detail::relational_residual(space, pair.pos_rel);
                auto res_neg = detail::relational_residual(space, pair.neg_rel);
                detail::apply_relational(space, pair.pos_rel, res_pos, +1.0, config.lr);
                detail::apply_relational(space, pair.neg_rel, res_neg, -1.0, config.lr);
                for (int id : {pair.pos_rel.head, pair.pos_rel.tail, pair.neg_rel.head,
                               pair.neg_rel.tail})
                    project_unit_ball(space.instance(id));
                project_unit_ball(space.relation(pair.pos_rel.relation));
            }
            return loss;
        }
        case TripleKind::InstanceOf: {
            double fp = score_instance_of(space.instance(pair.pos_isa.sub),
                                          space.center(pair.pos_isa.sup),
                                          space.radius(pair.pos_isa.sup));
            double fn = score_instance_of(space.instance(pair.neg_isa.sub),
                                          space.center(pair.neg_isa.sup),
                                          space.radius(pair.neg_isa.sup));
            if (!std::isfinite(fp) || !std::isfinite(fn))
                throw NumericalError("non-finite instanceOf score at triple (" +
                                     std::to_string(pair.pos_isa.sub) + ", " +
                                     std::to_string(pair.pos_isa.sup) + ")");
            double loss = hinge(fp, fn, config.margin_e);
            if (loss > 0.0 && config.mode == Mode::TransC) {
                auto dir_pos = detail::instance_of_direction(space, pair.pos_isa);
                auto dir_neg = detail::instance_of_direction(space, pair.neg_isa);
                detail::apply_instance_of(space, pair.pos_isa, dir_pos, +1.0, config.lr);
                detail::apply_instance_of(space, pair.neg_isa, dir_neg, -1.0, config.lr);
                project_unit_ball(space.instance(pair.pos_isa.sub));
                project_unit_ball(space.instance(pair.neg_isa.sub));
                project_unit_ball(space.center(pair.pos_isa.sup));
                project_unit_ball(space.center(pair.neg_isa.sup));
                detail::clamp_radius(space, pair.pos_isa.sup);
                detail::clamp_radius(space, pair.neg_isa.sup);
            }
            return loss;
        }
        default: {
            double fp = score_sub_class_of(space.center(pair.pos_isa.sub),
                                           space.radius(pair.pos_isa.sub),
                                           space.center(pair.pos_isa.sup),
                                           space.radius(pair.pos_isa.sup));
            double fn = score_sub_class_of(space.center(pair.neg_isa.sub),
                                           space.radius(pair.neg_isa.sub),
                                           space.center(pair.neg_isa.sup),
                                           space.radius(pair.neg_isa.sup));
            if (!std::isfinite(fp) || !std::isfinite(fn))
                throw NumericalError("non-finite subClassOf score at triple (" +
                                     std::to_string(pair.pos_isa.sub) + ", " +
                                     std::to_string(pair.pos_isa.sup) + ")");
            double loss = hinge(fp, fn, config.margin_c);
            if (loss > 0.0 && config.mode == Mode::TransC) {
                auto dir_pos = detail::sub_class_of_direction(space, pair.pos_isa);
                auto dir_neg = detail::sub_class_of_direction(space, pair.neg_isa);
                detail::apply_sub_class_of(space, pair.pos_isa, dir_pos, +1.0, config.lr);
                detail::apply_sub_class_of(space, pair.neg_isa, dir_neg, -1.0, config.lr);
                for (int c : {pair.pos_isa.sub, pair.pos_isa.sup, pair.neg_isa.sub,
                              pair.neg_isa.sup}) {
                    project_unit_ball(space.center(c));
                    detail::clamp_radius(space, c);
                }
            }
            return loss;
        }
    }
}

// Processes a batch sequentially and accumulates per-kind losses.
inline void step_batch(TrainState& state, const std::vector<TrainPair>& batch,
                       const TrainConfig& config, EpochLoss& loss) {
    for (const auto& pair : batch) {
        double l = step_pair(state.space, pair, config);
        switch (pair.kind) {
            case TripleKind::InstanceOf: loss.instance_of += l; break;
            case TripleKind::SubClassOf: loss.sub_class_of += l; break;
            default: loss.relational += l; break;
        }
    }
}

// Checkpoint layout: magic "TCKP", u32 version, u32 dim, u64 counts for
// instances/concepts/relations, then little-endian f64 arrays in order
// instances, relations, sphere centers, radii.
inline void save_checkpoint(const EmbeddingSpace& space, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write checkpoint " + path.string());
    const char magic[4] = {'T', 'C', 'K', 'P'};
    std::uint32_t version = 1;
    std::uint32_t dim = static_cast<std::uint32_t>(space.dim());
    std::uint64_t ni = static_cast<std::uint64_t>(space.num_instances());
    std::uint64_t nc = static_cast<std::uint64_t>(space.num_concepts());
    std::uint64_t nr = static_cast<std::uint64_t>(space.num_relations());
    out.write(magic, 4);
    out.write(reinterpret_cast<const char*>(&version), sizeof version);
    out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
    out.write(reinterpret_cast<const char*>(&ni), sizeof ni);
    out.write(reinterpret_cast<const char*>(&nc), sizeof nc);
    out.write(reinterpret_cast<const char*>(&nr), sizeof nr);
    auto write_block = [&](const std::vector<double>& v) {
        out.write(reinterpret_cast<const char*>(v.data()),
                  static_cast<std::streamsize>(v.size() * sizeof(double)));
    };
    write_block(space.instance_data());
    write_block(space.relation_data());
    write_block(space.center_data());
    write_block(space.radius_data());
    if (!out) throw DataError("short write on checkpoint " + path.string());
}

inline EmbeddingSpace load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open checkpoint " + path.string());
    char magic[4];
    std::uint32_t version = 0, dim = 0;
    std::uint64_t ni = 0, nc = 0, nr = 0;
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "TCKP", 4) != 0)
        throw ParseError("bad checkpoint magic in " + path.string());
    in.read(reinterpret_cast<char*>(&version), sizeof version);
    if (version != 1) throw ParseError("unsupported checkpoint version in " + path.string());
    in.read(reinterpret_cast<char*>(&dim), sizeof dim);
    in.read(reinterpret_cast<char*>(&ni), sizeof ni);
    in.read(reinterpret_cast<char*>(&nc), sizeof nc);
    in.read(reinterpret_cast<char*>(&nr), sizeof nr);
    if (!in) throw ParseError("truncated checkpoint header in " + path.string());
    EmbeddingSpace space(static_cast<int>(dim), static_cast<int>(ni), static_cast<int>(nc),
                         static_cast<int>(nr));
    auto read_block = [&](std::vector<double>& v) {
        in.read(reinterpret_cast<char*>(v.data()),
                static_cast<std::streamsize>(v.size() * sizeof(double)));
    };
    read_block(space.instance_data());
    read_block(space.relation_data());
    read_block(space.center_data());
    read_block(space.radius_data());
    if (!in) throw ParseError("truncated checkpoint payload in " + path.string());
    return space;
}

namespace detail {

struct StreamItem {
    TripleKind kind;
    int index;
};

inline TrainPair make_pair(const KnowledgeGraph& kg, const Sampler& sampler,
                           const StreamItem& item, Rng& rng) {
    TrainPair pair;
    pair.kind = item.kind;
    switch (item.kind) {
        case TripleKind::Relational:
            pair.pos_rel = kg.relational.train[static_cast<std::size_t>(item.index)];
            pair.neg_rel = sampler.corrupt_relational(pair.pos_rel, rng);
            break;
        case TripleKind::InstanceOf:
            pair.pos_isa = kg.instance_of.train[static_cast<std::size_t>(item.index)];
            pair.neg_isa = sampler.corrupt_instance_of(pair.pos_isa, rng);
            break;
        default:
            pair.pos_isa = kg.sub_class_of.train[static_cast<std::size_t>(item.index)];
            pair.neg_isa = sampler.corrupt_sub_class_of(pair.pos_isa, rng);
            break;
    }
    return pair;
}

}  // namespace detail

using EpochCallback = std::function<void(int epoch, const EpochLoss&)>;

// Full training loop: all three triple sets mixed into one shuffled stream,
// negatives resampled fresh each epoch. threads > 1 switches to lock-free
// parallel workers with unsynchronized sparse updates (nondeterministic).
inline TrainState train(const KnowledgeGraph& kg, const TrainConfig& config,
                        const EpochCallback& on_epoch = {}) {
    config.validate();
    namespace fs = std::filesystem;

    Rng init_rng = make_rng(config.seed, "init");
    TrainState state;
    state.space = init_space(kg.instances.size(), kg.concepts.size(), kg.relations.size(), config,
                             init_rng);

    Sampler sampler(kg, config.strategy);

    std::vector<detail::StreamItem> stream;
    stream.reserve(kg.relational.train.size() + kg.instance_of.train.size() +
                   kg.sub_class_of.train.size());
    for (std::size_t i = 0; i < kg.relational.train.size(); ++i)
        stream.push_back({TripleKind::Relational, static_cast<int>(i)});
    for (std::size_t i = 0; i < kg.instance_of.train.size(); ++i)
        stream.push_back({TripleKind::InstanceOf, static_cast<int>(i)});
    for (std::size_t i = 0; i < kg.sub_class_of.train.size(); ++i)
        stream.push_back({TripleKind::SubClassOf, static_cast<int>(i)});

    Rng shuffle_rng = make_rng(config.seed, "shuffle");
    const std::uint64_t sample_seed = derive_seed(config.seed, "negatives");

    auto write_checkpoint = [&](int epoch) {
        if (config.out_dir.empty()) return;
        fs::create_directories(config.out_dir);
        save_checkpoint(state.space, fs::path(config.out_dir) / "checkpoint.bin");
        std::ofstream cfg(fs::path(config.out_dir) / "config.json");
        nlohmann::json j = config_to_json(config);
        j["epoch"] = epoch;
        cfg << j.dump(2) << "\n";
    };

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::shuffle(stream.begin(), stream.end(), shuffle_rng);
        EpochLoss loss;

        if (config.threads == 1) {
            Rng neg_rng(sample_seed + static_cast<std::uint64_t>(epoch));
            std::vector<TrainPair> batch;
            batch.reserve(static_cast<std::size_t>(config.batch_size));
            for (std::size_t pos = 0; pos < stream.size(); pos += config.batch_size) {
                batch.clear();
                std::size_t end = std::min(stream.size(), pos + config.batch_size);
                for (std::size_t i = pos; i < end; ++i)
                    batch.push_back(detail::make_pair(kg, sampler, stream[i], neg_rng));
                step_batch(state, batch, config, loss);
            }
        } else {
            // Hogwild-style: workers share the parameter table without locks.
            std::vector<EpochLoss> worker_loss(static_cast<std::size_t>(config.threads));
            std::vector<std::thread> workers;
            std::exception_ptr first_error;
            std::mutex error_mutex;
            for (int w = 0; w < config.threads; ++w) {
                workers.emplace_back([&, w]() {
                    try {
                        Rng rng(sample_seed + static_cast<std::uint64_t>(epoch) * 8191 +
                                static_cast<std::uint64_t>(w));
                        for (std::size_t i = static_cast<std::size_t>(w); i < stream.size();
                             i += static_cast<std::size_t>(config.threads)) {
                            TrainPair pair = detail::make_pair(kg, sampler, stream[i], rng);
                            double l = step_pair(state.space, pair, config);
                            auto& wl = worker_loss[static_cast<std::size_t>(w)];
                            switch (pair.kind) {
                                case TripleKind::InstanceOf: wl.instance_of += l; break;
                                case TripleKind::SubClassOf: wl.sub_class_of += l; break;
                                default: wl.relational += l; break;
                            }
                        }
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!first_error) first_error = std::current_exception();
                    }
                });
            }
            for (auto& t : workers) t.join();
            if (first_error) std::rethrow_exception(first_error);
            for (const auto& wl : worker_loss) {
                loss.instance_of += wl.instance_of;
                loss.sub_class_of += wl.sub_class_of;
                loss.relational += wl.relational;
            }
        }

        state.epoch = epoch + 1;
        state.trace.push_back(loss);
        if (on_epoch) on_epoch(epoch + 1, loss);
        if (config.checkpoint_interval > 0 && (epoch + 1) % config.checkpoint_interval == 0)
            write_checkpoint(epoch + 1);
    }

    write_checkpoint(config.epochs);
    return state;
}

}  // namespace transc
