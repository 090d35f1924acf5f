#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "transc/core.hpp"

namespace transc {

// String <-> dense id interning for one id space.
class Vocab {
public:
    int add(const std::string& name) {
        auto [it, inserted] = index_.emplace(name, static_cast<int>(names_.size()));
        if (inserted) names_.push_back(name);
        return it->second;
    }

    // -1 when unknown.
    int find(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? -1 : it->second;
    }

    int require(const std::string& name) const {
        int id = find(name);
        if (id < 0) throw DataError("unknown identifier: " + name);
        return id;
    }

    const std::string& name(int id) const { return names_.at(static_cast<std::size_t>(id)); }
    int size() const { return static_cast<int>(names_.size()); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

enum class SplitId { Train, Valid, Test };

template <typename T>
struct Splits {
    std::vector<T> train, valid, test;

    std::vector<T>& at(SplitId s) {
        switch (s) {
            case SplitId::Train: return train;
            case SplitId::Valid: return valid;
            default: return test;
        }
    }
    const std::vector<T>& at(SplitId s) const {
        return const_cast<Splits*>(this)->at(s);
    }
};

// Immutable after load; safe for concurrent reads.
struct KnowledgeGraph {
    Vocab instances, concepts, relations;

    Splits<RelTriple> relational;
    Splits<IsaTriple> instance_of;
    Splits<IsaTriple> sub_class_of;

    // Inverse image of training S_e.
    std::vector<std::vector<int>> concept_members;    // concept -> instances
    std::vector<std::vector<int>> instance_concepts;  // instance -> concepts
    // Training S_c adjacency, used by the typed concept corruption pool.
    std::vector<std::vector<int>> concept_supers;     // concept -> super concepts
    std::vector<std::vector<int>> super_subs;         // concept -> sub concepts

    // Union of all splits (for Filter evaluation) and train-only sets
    // (for negative-sample rejection).
    std::unordered_set<std::uint64_t> rel_all, rel_train;
    std::unordered_set<std::uint64_t> inst_all, inst_train;
    std::unordered_set<std::uint64_t> sub_all, sub_train;

    bool contains_relational(const RelTriple& t) const { return rel_all.count(pack_rel(t)) != 0; }
    bool contains_instance_of(const IsaTriple& t) const { return inst_all.count(pack_isa(t)) != 0; }
    bool contains_sub_class_of(const IsaTriple& t) const { return sub_all.count(pack_isa(t)) != 0; }

    void rebuild_indexes() {
        concept_members.assign(static_cast<std::size_t>(concepts.size()), {});
        instance_concepts.assign(static_cast<std::size_t>(instances.size()), {});
        concept_supers.assign(static_cast<std::size_t>(concepts.size()), {});
        super_subs.assign(static_cast<std::size_t>(concepts.size()), {});
        rel_all.clear(); rel_train.clear();
        inst_all.clear(); inst_train.clear();
        sub_all.clear(); sub_train.clear();

        for (const auto& t : instance_of.train) {
            concept_members[static_cast<std::size_t>(t.sup)].push_back(t.sub);
            instance_concepts[static_cast<std::size_t>(t.sub)].push_back(t.sup);
        }
        for (const auto& t : sub_class_of.train) {
            concept_supers[static_cast<std::size_t>(t.sub)].push_back(t.sup);
            super_subs[static_cast<std::size_t>(t.sup)].push_back(t.sub);
        }
        for (SplitId s : {SplitId::Train, SplitId::Valid, SplitId::Test}) {
            for (const auto& t : relational.at(s)) rel_all.insert(pack_rel(t));
            for (const auto& t : instance_of.at(s)) inst_all.insert(pack_isa(t));
            for (const auto& t : sub_class_of.at(s)) sub_all.insert(pack_isa(t));
        }
        for (const auto& t : relational.train) rel_train.insert(pack_rel(t));
        for (const auto& t : instance_of.train) inst_train.insert(pack_isa(t));
        for (const auto& t : sub_class_of.train) sub_train.insert(pack_isa(t));
    }
};

namespace detail {

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find('\t', start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

inline long parse_count_header(std::istream& in, const std::string& file) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(file + ": missing count header");
    try {
        return std::stol(line);
    } catch (const std::exception&) {
        throw ParseError(file + ":1: bad count header '" + line + "'");
    }
}

inline int parse_id(const std::string& field, const std::string& file, long lineno) {
    try {
        std::size_t used = 0;
        int v = std::stoi(field, &used);
        if (used != field.size()) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        throw ParseError(file + ":" + std::to_string(lineno) + ": bad id field '" + field + "'");
    }
}

// Reads "name<TAB>id" vocab files; ids must form a dense 0..N-1 range.
inline Vocab load_vocab(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    const std::string file = path.filename().string();
    long n = parse_count_header(in, file);
    std::vector<std::string> names(static_cast<std::size_t>(n));
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::string line;
    for (long i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw ParseError(file + ": expected " + std::to_string(n) + " records, got " + std::to_string(i));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto fields = split_tabs(line);
        if (fields.size() != 2)
            throw ParseError(file + ":" + std::to_string(i + 2) + ": expected 2 fields, got " +
                             std::to_string(fields.size()));
        int id = parse_id(fields[1], file, i + 2);
        if (id < 0 || id >= n)
            throw RangeError(file + ":" + std::to_string(i + 2) + ": id " + std::to_string(id) +
                             " outside declared range [0, " + std::to_string(n) + ")");
        if (seen[static_cast<std::size_t>(id)])
            throw ParseError(file + ":" + std::to_string(i + 2) + ": duplicate id " + std::to_string(id));
        seen[static_cast<std::size_t>(id)] = true;
        names[static_cast<std::size_t>(id)] = fields[0];
    }
    Vocab v;
    for (auto& name : names) v.add(name);
    if (v.size() != static_cast<int>(n)) throw ParseError(file + ": duplicate names in vocabulary");
    return v;
}

template <typename T, typename ParseFn>
std::vector<T> load_triples(const std::filesystem::path& path, std::size_t fields_expected,
                            ParseFn&& make, std::function<std::uint64_t(const T&)> key,
                            std::ostream* warn) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    const std::string file = path.filename().string();
    long n = parse_count_header(in, file);
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(n));
    std::unordered_set<std::uint64_t> seen;
    std::string line;
    for (long i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw ParseError(file + ": expected " + std::to_string(n) + " records, got " + std::to_string(i));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto fields = split_tabs(line);
        if (fields.size() != fields_expected)
            throw ParseError(file + ":" + std::to_string(i + 2) + ": expected " +
                             std::to_string(fields_expected) + " fields, got " +
                             std::to_string(fields.size()));
        T t = make(fields, file, i + 2);
        // a null key disables deduplication (duplicates are meaningful in
        // some derived files, e.g. evaluation negatives)
        if (key && !seen.insert(key(t)).second) {
            if (warn) *warn << "warning: " << file << ":" << (i + 2) << ": duplicate triple dropped\n";
            continue;
        }
        out.push_back(t);
    }
    return out;
}

inline void check_range(int id, int limit, const std::string& what, const std::string& file, long lineno) {
    if (id < 0 || id >= limit)
        throw RangeError(file + ":" + std::to_string(lineno) + ": " + what + " id " + std::to_string(id) +
                         " outside declared range [0, " + std::to_string(limit) + ")");
}

}  // namespace detail

// Loads the tab-separated directory layout: vocab files plus per-split
// triple files. Missing valid/test files are treated as empty splits.
inline KnowledgeGraph load_kg(const std::filesystem::path& dir, std::ostream* warn = &std::cerr) {
    namespace fs = std::filesystem;
    KnowledgeGraph kg;
    kg.instances = detail::load_vocab(dir / "instance2id.txt");
    kg.concepts = detail::load_vocab(dir / "concept2id.txt");
    kg.relations = detail::load_vocab(dir / "relation2id.txt");

    const int ni = kg.instances.size();
    const int nc = kg.concepts.size();
    const int nr = kg.relations.size();

    auto rel_file = [&](const fs::path& p) {
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
            [](const RelTriple& t) { return pack_rel(t); }, warn);
    };
    auto isa_file = [&](const fs::path& p, int sub_limit, int sup_limit, const char* sub_what,
                        const char* sup_what) {
        return detail::load_triples<IsaTriple>(
            p, 2,
            [&](const std::vector<std::string>& f, const std::string& file, long lineno) {
                IsaTriple t;
                t.sub = detail::parse_id(f[0], file, lineno);
                t.sup = detail::parse_id(f[1], file, lineno);
                detail::check_range(t.sub, sub_limit, sub_what, file, lineno);
                detail::check_range(t.sup, sup_limit, sup_what, file, lineno);
                return t;
            },
            [](const IsaTriple& t) { return pack_isa(t); }, warn);
    };

    auto load_split = [&](const std::string& stem, auto&& loader, auto& splits) {
        for (auto [suffix, id] : {std::pair{"train", SplitId::Train}, std::pair{"valid", SplitId::Valid},
                                  std::pair{"test", SplitId::Test}}) {
            fs::path p = dir / (stem + "_" + suffix + ".txt");
            if (fs::exists(p))
                splits.at(id) = loader(p);
            else if (id == SplitId::Train)
                throw DataError("missing required file " + p.string());
        }
    };

    load_split("triple2id", rel_file, kg.relational);
    load_split("instanceOf2id",
               [&](const fs::path& p) { return isa_file(p, ni, nc, "instance", "concept"); },
               kg.instance_of);
    load_split("subClassOf2id",
               [&](const fs::path& p) { return isa_file(p, nc, nc, "sub concept", "super concept"); },
               kg.sub_class_of);

    kg.rebuild_indexes();
    return kg;
}

// Writes the same layout with canonically sorted triple files.
inline void save_kg(const KnowledgeGraph& kg, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    auto write_vocab = [&](const Vocab& v, const std::string& file) {
        std::ofstream out(dir / file, std::ios::binary);
        out << v.size() << "\n";
        for (int i = 0; i < v.size(); ++i) out << v.name(i) << "\t" << i << "\n";
    };
    write_vocab(kg.instances, "instance2id.txt");
    write_vocab(kg.concepts, "concept2id.txt");
    write_vocab(kg.relations, "relation2id.txt");

    auto write_rel = [&](std::vector<RelTriple> ts, const std::string& file) {
        std::sort(ts.begin(), ts.end());
        std::ofstream out(dir / file, std::ios::binary);
        out << ts.size() << "\n";
        for (const auto& t : ts) out << t.head << "\t" << t.tail << "\t" << t.relation << "\n";
    };
    auto write_isa = [&](std::vector<IsaTriple> ts, const std::string& file) {
        std::sort(ts.begin(), ts.end());
        std::ofstream out(dir / file, std::ios::binary);
        out << ts.size() << "\n";
        for (const auto& t : ts) out << t.sub << "\t" << t.sup << "\n";
    };
    for (auto [suffix, id] : {std::pair{"train", SplitId::Train}, std::pair{"valid", SplitId::Valid},
                              std::pair{"test", SplitId::Test}}) {
        write_rel(kg.relational.at(id), std::string("triple2id_") + suffix + ".txt");
        write_isa(kg.instance_of.at(id), std::string("instanceOf2id_") + suffix + ".txt");
        write_isa(kg.sub_class_of.at(id), std::string("subClassOf2id_") + suffix + ".txt");
    }
}

}  // namespace transc
