#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <thread>
#include <vector>

#include "json.hpp"
#include "transc/core.hpp"
#include "transc/geometry.hpp"
#include "transc/kg.hpp"
#include "transc/sampling.hpp"

namespace transc {

// ---------------------------------------------------------------------------
// Link prediction

struct RankResult {
    RelTriple triple;
    CorruptSide position = CorruptSide::Head;
    long raw_rank = 1;
    long filter_rank = 1;
};

namespace detail {

// Mean-adjusted tie rank, rounded half up: 1 + better + round(tied / 2).
inline long tie_rank(long better, long tied) { return 1 + better + (tied + 1) / 2; }

}  // namespace detail

// Scores every instance as a substitute at `position`, ranks ascending by
// f_r. The Filter rank drops candidates that form a triple known in any
// split, never the true entity itself.
inline RankResult rank_triple(const EmbeddingSpace& space, const KnowledgeGraph& kg,
                              const RelTriple& t, CorruptSide position) {
    const int dim = space.dim();
    const int true_id = position == CorruptSide::Head ? t.head : t.tail;
    auto r = space.relation(t.relation);

    // Head replacement scores ||e - (t - r)||^2, tail replacement ||(h + r) - e||^2.
    std::vector<double> target(static_cast<std::size_t>(dim));
    if (position == CorruptSide::Head) {
        auto tail = space.instance(t.tail);
        for (int k = 0; k < dim; ++k) target[static_cast<std::size_t>(k)] = tail[k] - r[k];
    } else {
        auto head = space.instance(t.head);
        for (int k = 0; k < dim; ++k) target[static_cast<std::size_t>(k)] = head[k] + r[k];
    }

    auto candidate_score = [&](int e) {
        auto v = space.instance(e);
        double s = 0.0;
        for (int k = 0; k < dim; ++k) {
            double d = v[k] - target[static_cast<std::size_t>(k)];
            s += d * d;
        }
        return s;
    };

    const double true_score = candidate_score(true_id);
    long raw_better = 0, raw_tied = 0, flt_better = 0, flt_tied = 0;
    for (int e = 0; e < kg.instances.size(); ++e) {
        if (e == true_id) continue;
        double s = candidate_score(e);
        bool better = s < true_score;
        bool tied = s == true_score;
        if (!better && !tied) continue;
        raw_better += better;
        raw_tied += tied;
        RelTriple candidate = t;
        (position == CorruptSide::Head ? candidate.head : candidate.tail) = e;
        if (kg.contains_relational(candidate)) continue;
        flt_better += better;
        flt_tied += tied;
    }

    RankResult res;
    res.triple = t;
    res.position = position;
    res.raw_rank = detail::tie_rank(raw_better, raw_tied);
    res.filter_rank = detail::tie_rank(flt_better, flt_tied);
    return res;
}

struct LinkPredictionReport {
    double mrr_raw = 0.0;
    double mrr_filter = 0.0;
    std::array<double, 3> hits_raw{};     // percentages, N in {1, 3, 10}
    std::array<double, 3> hits_filter{};
    long num_rankings = 0;
    std::vector<RankResult> ranks;        // both positions, test order
};

inline constexpr std::array<int, 3> kHitsLevels{1, 3, 10};

inline LinkPredictionReport link_prediction(const EmbeddingSpace& space, const KnowledgeGraph& kg,
                                            SplitId split = SplitId::Test, int threads = 1) {
    const auto& triples = kg.relational.at(split);
    if (triples.empty()) throw DataError("link prediction: empty relational split");

    LinkPredictionReport report;
    report.ranks.resize(triples.size() * 2);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            report.ranks[2 * i] = rank_triple(space, kg, triples[i], CorruptSide::Head);
            report.ranks[2 * i + 1] = rank_triple(space, kg, triples[i], CorruptSide::Tail);
        }
    };
    if (threads <= 1) {
        work(0, triples.size());
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (triples.size() + static_cast<std::size_t>(threads) - 1) /
                            static_cast<std::size_t>(threads);
        for (int w = 0; w < threads; ++w) {
            std::size_t begin = static_cast<std::size_t>(w) * chunk;
            std::size_t end = std::min(triples.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(work, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    report.num_rankings = static_cast<long>(report.ranks.size());
    for (const auto& r : report.ranks) {
        report.mrr_raw += 1.0 / static_cast<double>(r.raw_rank);
        report.mrr_filter += 1.0 / static_cast<double>(r.filter_rank);
        for (std::size_t n = 0; n < kHitsLevels.size(); ++n) {
            report.hits_raw[n] += r.raw_rank <= kHitsLevels[n];
            report.hits_filter[n] += r.filter_rank <= kHitsLevels[n];
        }
    }
    double denom = static_cast<double>(report.num_rankings);
    report.mrr_raw /= denom;
    report.mrr_filter /= denom;
    for (std::size_t n = 0; n < kHitsLevels.size(); ++n) {
        report.hits_raw[n] *= 100.0 / denom;
        report.hits_filter[n] *= 100.0 / denom;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Classification negatives

// One negative per positive, corrupting one side uniformly at random.
// Candidates present in *any* split are rejected so no held-out positive is
// ever labeled negative. Generated once per split with a fixed seed and
// persisted next to the split files for reproducible metrics.
struct EvalNegatives {
    Splits<RelTriple> relational;      // valid/test used; train stays empty
    Splits<IsaTriple> instance_of;
    Splits<IsaTriple> sub_class_of;
};

namespace detail {

// Tries the coin-chosen side first; if that side is structurally saturated
// (every candidate forms a known triple), retries on the other side before
// giving up.
template <typename MakeFn, typename KnownFn>
auto generate_negative(MakeFn&& make, KnownFn&& known, Rng& rng, bool first_side,
                       const char* what) {
    for (bool side : {first_side, !first_side}) {
        for (int attempt = 0; attempt < Sampler::kMaxAttempts; ++attempt) {
            auto neg = make(rng, side);
            if (!known(neg)) return neg;
        }
    }
    throw SamplingExhausted(std::string("negative generation exhausted for ") + what);
}

}  // namespace detail

inline EvalNegatives generate_eval_negatives(const KnowledgeGraph& kg, std::uint64_t seed) {
    EvalNegatives out;
    Rng rng = make_rng(seed, "eval-negatives");
    std::bernoulli_distribution coin(0.5);
    std::uniform_int_distribution<int> rand_instance(0, std::max(0, kg.instances.size() - 1));
    std::uniform_int_distribution<int> rand_concept(0, std::max(0, kg.concepts.size() - 1));

    for (SplitId split : {SplitId::Valid, SplitId::Test}) {
        for (const auto& t : kg.relational.at(split)) {
            out.relational.at(split).push_back(detail::generate_negative(
                [&](Rng& r, bool head) {
                    RelTriple neg = t;
                    (head ? neg.head : neg.tail) = rand_instance(r);
                    return neg;
                },
                [&](const RelTriple& neg) { return neg == t || kg.contains_relational(neg); },
                rng, coin(rng), "relational triple"));
        }
        for (const auto& t : kg.instance_of.at(split)) {
            out.instance_of.at(split).push_back(detail::generate_negative(
                [&](Rng& r, bool head) {
                    IsaTriple neg = t;
                    if (head)
                        neg.sub = rand_instance(r);
                    else
                        neg.sup = rand_concept(r);
                    return neg;
                },
                [&](const IsaTriple& neg) { return neg == t || kg.contains_instance_of(neg); },
                rng, coin(rng), "instanceOf triple"));
        }
        for (const auto& t : kg.sub_class_of.at(split)) {
            out.sub_class_of.at(split).push_back(detail::generate_negative(
                [&](Rng& r, bool head) {
                    IsaTriple neg = t;
                    (head ? neg.sub : neg.sup) = rand_concept(r);
                    return neg;
                },
                [&](const IsaTriple& neg) {
                    // a reflexive (c, c) corruption is trivially true, so it
                    // is never a usable negative
                    return neg == t || neg.sub == neg.sup || kg.contains_sub_class_of(neg);
                },
                rng, coin(rng), "subClassOf triple"));
        }
    }
    return out;
}

inline void save_eval_negatives(const EvalNegatives& negs, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto write_rel = [&](const std::vector<RelTriple>& ts, const std::string& file) {
        std::ofstream out(dir / file, std::ios::binary);
        out << ts.size() << "\n";
        for (const auto& t : ts) out << t.head << "\t" << t.tail << "\t" << t.relation << "\n";
    };
    auto write_isa = [&](const std::vector<IsaTriple>& ts, const std::string& file) {
        std::ofstream out(dir / file, std::ios::binary);
        out << ts.size() << "\n";
        for (const auto& t : ts) out << t.sub << "\t" << t.sup << "\n";
    };
    for (auto [suffix, id] : {std::pair{"valid", SplitId::Valid}, std::pair{"test", SplitId::Test}}) {
        write_rel(negs.relational.at(id), std::string("triple2id_") + suffix + "_neg.txt");
        write_isa(negs.instance_of.at(id), std::string("instanceOf2id_") + suffix + "_neg.txt");
        write_isa(negs.sub_class_of.at(id), std::string("subClassOf2id_") + suffix + "_neg.txt");
    }
}

inline bool eval_negatives_exist(const std::filesystem::path& dir) {
    return std::filesystem::exists(dir / "triple2id_valid_neg.txt");
}

inline EvalNegatives load_eval_negatives(const KnowledgeGraph& kg,
                                         const std::filesystem::path& dir) {
    EvalNegatives out;
    const int ni = kg.instances.size();
    const int nc = kg.concepts.size();
    const int nr = kg.relations.size();
    auto rel_file = [&](const std::filesystem::path& p) {
        return detail::load_triples<RelTriple>(
            p, 3,
            [&](const std::vector<std::string>& f, const std::string& file, long lineno) {
                RelTriple t;
                t.head = detail::parse_id(f[0], file, lineno);
                t.tail = detail::parse_id(f[1], file, lineno);
                t.relation = detail::parse_id(f[2], file, lineno);
                detail::check_range(t.head, ni, "head instance", file, lineno);
                detail::check_range(t.tail, ni, "tail instance", file, lineno);
                detail::check_range(t.relation, nr, "relation", file, lineno);
                return t;
            },
            nullptr, nullptr);  // keep duplicates: one negative per positive
    };
    auto isa_file = [&](const std::filesystem::path& p, int sub_limit) {
        return detail::load_triples<IsaTriple>(
            p, 2,
            [&](const std::vector<std::string>& f, const std::string& file, long lineno) {
                IsaTriple t;
                t.sub = detail::parse_id(f[0], file, lineno);
                t.sup = detail::parse_id(f[1], file, lineno);
                detail::check_range(t.sub, sub_limit, "sub", file, lineno);
                detail::check_range(t.sup, nc, "sup", file, lineno);
                return t;
            },
            nullptr, nullptr);
    };
    for (auto [suffix, id] : {std::pair{"valid", SplitId::Valid}, std::pair{"test", SplitId::Test}}) {
        out.relational.at(id) = rel_file(dir / (std::string("triple2id_") + suffix + "_neg.txt"));
        out.instance_of.at(id) =
            isa_file(dir / (std::string("instanceOf2id_") + suffix + "_neg.txt"), ni);
        out.sub_class_of.at(id) =
            isa_file(dir / (std::string("subClassOf2id_") + suffix + "_neg.txt"), nc);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Threshold fitting

struct ThresholdTable {
    std::vector<double> relational;       // delta_r per relation id
    std::vector<bool> relational_flagged; // true when fallback (no valid data)
    double instance_of = 0.0;
    double sub_class_of = 0.0;
    bool instance_of_flagged = false;
    bool sub_class_of_flagged = false;
};

namespace detail {

struct CutResult {
    double delta = 0.0;
    double accuracy = 0.0;
};

// Exhaustive sweep over all separating cuts: below the minimum, between
// consecutive distinct scores (midpoints), and above the maximum. A triple
// is predicted positive iff score < delta. Ties toward the smallest delta.
inline CutResult optimal_cut(std::vector<std::pair<double, bool>> scored) {
    if (scored.empty()) throw DataError("optimal_cut: no scores");
    std::sort(scored.begin(), scored.end());
    const long n = static_cast<long>(scored.size());
    long total_pos = 0;
    for (const auto& [s, label] : scored) total_pos += label;

    CutResult best;
    best.accuracy = -1.0;
    long pos_below = 0;  // positives with score < delta at cut k
    for (long k = 0; k <= n; ++k) {
        bool valid_cut = k == 0 || k == n ||
                         scored[static_cast<std::size_t>(k - 1)].first <
                             scored[static_cast<std::size_t>(k)].first;
        if (valid_cut) {
            // first k predicted positive: correct = pos among them + neg among rest
            long correct = pos_below + ((n - k) - (total_pos - pos_below));
            double acc = static_cast<double>(correct) / static_cast<double>(n);
            if (acc > best.accuracy) {
                best.accuracy = acc;
                if (k == 0)
                    best.delta = scored.front().first - 1.0;
                else if (k == n)
                    best.delta = scored.back().first + 1.0;
                else
                    best.delta = 0.5 * (scored[static_cast<std::size_t>(k - 1)].first +
                                        scored[static_cast<std::size_t>(k)].first);
            }
        }
        if (k < n) pos_below += scored[static_cast<std::size_t>(k)].second;
    }
    return best;
}

inline double median(std::vector<double> v) {
    if (v.empty()) throw DataError("median of empty score set");
    std::sort(v.begin(), v.end());
    std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace detail

inline double score_triple(const EmbeddingSpace& space, const RelTriple& t) {
    return score_relational(space.instance(t.head), space.relation(t.relation),
                            space.instance(t.tail));
}
inline double score_triple_instance_of(const EmbeddingSpace& space, const IsaTriple& t) {
    return score_instance_of(space.instance(t.sub), space.center(t.sup), space.radius(t.sup));
}
inline double score_triple_sub_class_of(const EmbeddingSpace& space, const IsaTriple& t) {
    return score_sub_class_of(space.center(t.sub), space.radius(t.sub), space.center(t.sup),
                              space.radius(t.sup));
}

// Per-relation delta_r (plus one each for instanceOf and subClassOf) fitted
// by exhaustive accuracy sweep on the valid split. Relations without valid
// triples fall back to the global median relational score and are flagged.
inline ThresholdTable fit_thresholds(const EmbeddingSpace& space, const KnowledgeGraph& kg,
                                     const EvalNegatives& negs) {
    ThresholdTable table;
    const int nr = kg.relations.size();
    std::vector<std::vector<std::pair<double, bool>>> per_relation(static_cast<std::size_t>(nr));
    std::vector<double> all_rel_scores;
    for (const auto& t : kg.relational.valid) {
        double s = score_triple(space, t);
        per_relation[static_cast<std::size_t>(t.relation)].emplace_back(s, true);
        all_rel_scores.push_back(s);
    }
    for (const auto& t : negs.relational.valid) {
        double s = score_triple(space, t);
        per_relation[static_cast<std::size_t>(t.relation)].emplace_back(s, false);
        all_rel_scores.push_back(s);
    }
    table.relational.assign(static_cast<std::size_t>(nr), 0.0);
    table.relational_flagged.assign(static_cast<std::size_t>(nr), false);
    for (int r = 0; r < nr; ++r) {
        if (per_relation[static_cast<std::size_t>(r)].empty()) {
            table.relational[static_cast<std::size_t>(r)] = detail::median(all_rel_scores);
            table.relational_flagged[static_cast<std::size_t>(r)] = true;
        } else {
            table.relational[static_cast<std::size_t>(r)] =
                detail::optimal_cut(per_relation[static_cast<std::size_t>(r)]).delta;
        }
    }

    auto fit_isa = [&](const std::vector<IsaTriple>& pos, const std::vector<IsaTriple>& neg,
                       auto&& scorer, double& delta, bool& flagged) {
        std::vector<std::pair<double, bool>> scored;
        for (const auto& t : pos) scored.emplace_back(scorer(t), true);
        for (const auto& t : neg) scored.emplace_back(scorer(t), false);
        if (scored.empty()) {
            delta = 0.0;
            flagged = true;
        } else {
            delta = detail::optimal_cut(std::move(scored)).delta;
        }
    };
    fit_isa(kg.instance_of.valid, negs.instance_of.valid,
            [&](const IsaTriple& t) { return score_triple_instance_of(space, t); },
            table.instance_of, table.instance_of_flagged);
    fit_isa(kg.sub_class_of.valid, negs.sub_class_of.valid,
            [&](const IsaTriple& t) { return score_triple_sub_class_of(space, t); },
            table.sub_class_of, table.sub_class_of_flagged);
    return table;
}

// Positive iff score strictly below the relation's threshold.
inline bool classify_relational(const EmbeddingSpace& space, const ThresholdTable& table,
                                const RelTriple& t) {
    return score_triple(space, t) < table.relational.at(static_cast<std::size_t>(t.relation));
}
inline bool classify_instance_of(const EmbeddingSpace& space, const ThresholdTable& table,
                                 const IsaTriple& t) {
    return score_triple_instance_of(space, t) < table.instance_of;
}
inline bool classify_sub_class_of(const EmbeddingSpace& space, const ThresholdTable& table,
                                  const IsaTriple& t) {
    return score_triple_sub_class_of(space, t) < table.sub_class_of;
}

// ---------------------------------------------------------------------------
// Classification metrics

struct MetricBundle {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    long support = 0;  // positives + negatives
};

namespace detail {

inline MetricBundle confusion_metrics(long tp, long fp, long tn, long fn) {
    MetricBundle m;
    m.support = tp + fp + tn + fn;
    if (m.support == 0) return m;
    m.accuracy = 100.0 * static_cast<double>(tp + tn) / static_cast<double>(m.support);
    m.precision = tp + fp == 0 ? 0.0 : 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fp);
    m.recall = tp + fn == 0 ? 0.0 : 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fn);
    m.f1 = m.precision + m.recall == 0.0
               ? 0.0
               : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

}  // namespace detail

struct ClassificationReport {
    MetricBundle relational, instance_of, sub_class_of;
};

inline ClassificationReport triple_classification(const EmbeddingSpace& space,
                                                  const KnowledgeGraph& kg,
                                                  const ThresholdTable& table,
                                                  const EvalNegatives& negs,
                                                  SplitId split = SplitId::Test) {
    ClassificationReport report;
    {
        long tp = 0, fp = 0, tn = 0, fn = 0;
        for (const auto& t : kg.relational.at(split))
            classify_relational(space, table, t) ? ++tp : ++fn;
        for (const auto& t : negs.relational.at(split))
            classify_relational(space, table, t) ? ++fp : ++tn;
        report.relational = detail::confusion_metrics(tp, fp, tn, fn);
    }
    {
        long tp = 0, fp = 0, tn = 0, fn = 0;
        for (const auto& t : kg.instance_of.at(split))
            classify_instance_of(space, table, t) ? ++tp : ++fn;
        for (const auto& t : negs.instance_of.at(split))
            classify_instance_of(space, table, t) ? ++fp : ++tn;
        report.instance_of = detail::confusion_metrics(tp, fp, tn, fn);
    }
    {
        long tp = 0, fp = 0, tn = 0, fn = 0;
        for (const auto& t : kg.sub_class_of.at(split))
            classify_sub_class_of(space, table, t) ? ++tp : ++fn;
        for (const auto& t : negs.sub_class_of.at(split))
            classify_sub_class_of(space, table, t) ? ++fp : ++tn;
        report.sub_class_of = detail::confusion_metrics(tp, fp, tn, fn);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Report serialization

inline nlohmann::json to_json(const LinkPredictionReport& r) {
    return {{"mrr_raw", r.mrr_raw},
            {"mrr_filter", r.mrr_filter},
            {"hits_raw", {{"1", r.hits_raw[0]}, {"3", r.hits_raw[1]}, {"10", r.hits_raw[2]}}},
            {"hits_filter",
             {{"1", r.hits_filter[0]}, {"3", r.hits_filter[1]}, {"10", r.hits_filter[2]}}},
            {"num_rankings", r.num_rankings}};
}

inline nlohmann::json to_json(const MetricBundle& m) {
    return {{"accuracy", m.accuracy},
            {"precision", m.precision},
            {"recall", m.recall},
            {"f1", m.f1},
            {"support", m.support}};
}

inline nlohmann::json to_json(const ClassificationReport& r) {
    return {{"relational", to_json(r.relational)},
            {"instanceOf", to_json(r.instance_of)},
            {"subClassOf", to_json(r.sub_class_of)}};
}

inline nlohmann::json to_json(const ThresholdTable& t, const KnowledgeGraph& kg) {
    nlohmann::json rel = nlohmann::json::object();
    for (int r = 0; r < kg.relations.size(); ++r) {
        rel[kg.relations.name(r)] = {{"delta", t.relational[static_cast<std::size_t>(r)]},
                                     {"flagged", static_cast<bool>(
                                                     t.relational_flagged[static_cast<std::size_t>(r)])}};
    }
    return {{"relational", rel},
            {"instanceOf", {{"delta", t.instance_of}, {"flagged", t.instance_of_flagged}}},
            {"subClassOf", {{"delta", t.sub_class_of}, {"flagged", t.sub_class_of_flagged}}}};
}

inline ThresholdTable thresholds_from_json(const nlohmann::json& j, const KnowledgeGraph& kg) {
    ThresholdTable t;
    t.relational.assign(static_cast<std::size_t>(kg.relations.size()), 0.0);
    t.relational_flagged.assign(static_cast<std::size_t>(kg.relations.size()), false);
    for (int r = 0; r < kg.relations.size(); ++r) {
        const auto& e = j.at("relational").at(kg.relations.name(r));
        t.relational[static_cast<std::size_t>(r)] = e.at("delta").get<double>();
        t.relational_flagged[static_cast<std::size_t>(r)] = e.at("flagged").get<bool>();
    }
    t.instance_of = j.at("instanceOf").at("delta").get<double>();
    t.instance_of_flagged = j.at("instanceOf").at("flagged").get<bool>();
    t.sub_class_of = j.at("subClassOf").at("delta").get<double>();
    t.sub_class_of_flagged = j.at("subClassOf").at("flagged").get<bool>();
    return t;
}

inline std::string render_link_prediction_table(const LinkPredictionReport& r) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(3);
    out << "metric        raw      filter\n";
    out << "MRR         " << std::setw(6) << r.mrr_raw << "   " << std::setw(6) << r.mrr_filter
        << "\n";
    out << std::setprecision(1);
    for (std::size_t n = 0; n < kHitsLevels.size(); ++n)
        out << "Hits@" << kHitsLevels[n] << (kHitsLevels[n] < 10 ? "      " : "     ") << std::setw(6)
            << r.hits_raw[n] << "   " << std::setw(6) << r.hits_filter[n] << "\n";
    return out.str();
}

inline std::string render_classification_table(const ClassificationReport& r) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(1);
    out << "kind         accuracy  precision  recall    f1\n";
    auto row = [&](const char* name, const MetricBundle& m) {
        out << std::left << std::setw(13) << name << std::right << std::setw(8) << m.accuracy
            << "  " << std::setw(9) << m.precision << "  " << std::setw(6) << m.recall << "  "
            << std::setw(6) << m.f1 << "\n";
    };
    row("relational", r.relational);
    row("instanceOf", r.instance_of);
    row("subClassOf", r.sub_class_of);
    return out.str();
}

inline void write_ranks_csv(const LinkPredictionReport& r, const KnowledgeGraph& kg,
                            const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    out << "head,relation,tail,position,raw_rank,filter_rank\n";
    for (const auto& rank : r.ranks) {
        out << kg.instances.name(rank.triple.head) << "," << kg.relations.name(rank.triple.relation)
            << "," << kg.instances.name(rank.triple.tail) << ","
            << (rank.position == CorruptSide::Head ? "head" : "tail") << "," << rank.raw_rank << ","
            << rank.filter_rank << "\n";
    }
}

}  // namespace transc
