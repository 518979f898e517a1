#pragma once

// Shared plumbing for the unit tests: corpus loading, universe configs, and
// small evaluation shortcuts.  Oracle computations live in the test files
// that freeze them.

#include <fstream>
#include <initializer_list>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ebadt/ebadt.hpp"

#ifndef EBADT_CORPUS_DIR
#error "EBADT_CORPUS_DIR must be defined by the build"
#endif

namespace th {

inline std::string corpus_path(const std::string& name) {
    return std::string(EBADT_CORPUS_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ebadt::Library load_corpus(std::initializer_list<std::string> names,
                                  const std::set<std::string>& ambient = {}) {
    ebadt::Library lib;
    for (const auto& n : names)
        lib.add(ebadt::parse_model(slurp(corpus_path(n)), n, ambient));
    return lib;
}

// A universe with the given integer range and anonymous carrier sizes.
inline ebadt::UniverseConfig universe(
    std::int64_t lo, std::int64_t hi,
    std::initializer_list<std::pair<std::string, std::int64_t>> sizes = {}) {
    ebadt::UniverseConfig cfg;
    cfg.int_min = lo;
    cfg.int_max = hi;
    for (const auto& [name, size] : sizes) cfg.carriers[name].size = size;
    return cfg;
}

inline void name_atoms(ebadt::UniverseConfig& cfg, const std::string& carrier,
                       std::initializer_list<std::string> names) {
    auto& spec = cfg.carriers[carrier];
    spec.atom_names.assign(names.begin(), names.end());
    spec.size = (std::int64_t)spec.atom_names.size();
}

inline std::set<std::string> atom_ambient(const ebadt::UniverseConfig& cfg) {
    std::set<std::string> out;
    for (const auto& [carrier, spec] : cfg.carriers)
        for (const auto& a : spec.atom_names) out.insert(a);
    return out;
}

// Evaluate an expression / predicate given a root environment.
inline ebadt::Value eval_str(const std::string& text,
                             const std::map<std::string, ebadt::Value>& root,
                             const ebadt::UniverseConfig& cfg) {
    ebadt::EvalCtx ctx{&cfg, nullptr};
    ebadt::Bindings locals;
    ebadt::Env env{&root, &locals};
    std::set<std::string> ambient;
    for (const auto& [k, v] : root) ambient.insert(k);
    return ebadt::eval_expr(*ebadt::parse_expression(text, ambient), env, ctx);
}

inline bool eval_pred_str(const std::string& text,
                          const std::map<std::string, ebadt::Value>& root,
                          const ebadt::UniverseConfig& cfg) {
    ebadt::EvalCtx ctx{&cfg, nullptr};
    ebadt::Bindings locals;
    ebadt::Env env{&root, &locals};
    std::set<std::string> ambient;
    for (const auto& [k, v] : root) ambient.insert(k);
    return ebadt::eval_pred(*ebadt::parse_predicate(text, ambient), env, ctx);
}

inline ebadt::Value vint(std::int64_t i) { return ebadt::Value::of_int(i); }
inline ebadt::Value vpair(ebadt::Value a, ebadt::Value b) {
    return ebadt::Value::pair(std::move(a), std::move(b));
}
inline ebadt::Value vset(std::vector<ebadt::Value> elems) {
    return ebadt::Value::set(std::move(elems));
}

}  // namespace th
