#include "punity/runspec.hpp"

#include <json.hpp>

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "punity/conditional.hpp"
#include "punity/entropy.hpp"
#include "punity/interval.hpp"
#include "punity/measure.hpp"
#include "punity/partition.hpp"
#include "punity/structures.hpp"
#include "punity/subshift.hpp"

namespace punity::cli {

using nlohmann::json;

namespace {

constexpr int kMaxHorizon = 60;

struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw SpecError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const json& j, const char* key, int lo, int hi) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw SpecError(std::string("field '") + key + "' must be an integer");
  const int x = v.get<int>();
  if (x < lo || x > hi)
    throw SpecError(std::string("field '") + key + "' out of range [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "]");
  return x;
}

std::vector<double> double_list(const json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw SpecError(std::string(what) + " must be a nonempty array of numbers");
  std::vector<double> out;
  for (const json& v : j) {
    if (!v.is_number()) throw SpecError(std::string(what) + " must contain numbers only");
    out.push_back(v.get<double>());
  }
  return out;
}

SystemPtr build_system(const json& j) {
  if (!j.is_object()) throw SpecError("system must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "alphabet_size" && key != "forbidden_pairs")
      throw SpecError("system: unknown field '" + key + "'");
  }
  const int a = int_field(j, "alphabet_size", 2, 16);
  std::vector<std::pair<int, int>> forbidden;
  if (j.contains("forbidden_pairs")) {
    const json& fp = j.at("forbidden_pairs");
    if (!fp.is_array()) throw SpecError("forbidden_pairs must be an array of [i, j] pairs");
    for (const json& p : fp) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
        throw SpecError("forbidden_pairs entries must be [i, j] integer pairs");
      forbidden.emplace_back(p[0].get<int>(), p[1].get<int>());
      auto& [x, y] = forbidden.back();
      if (x < 0 || x >= a || y < 0 || y >= a)
        throw SpecError("forbidden_pairs symbol out of range");
    }
  }
  if (forbidden.empty()) return SubshiftSystem::full_shift(a);
  return SubshiftSystem::forbidden_pairs(a, forbidden);
}

ShiftMeasure build_measure(const json& j, const SystemPtr& sys) {
  if (!j.is_object()) throw SpecError("measure must be an object");
  const json& kindv = field(j, "kind");
  if (!kindv.is_string()) throw SpecError("measure kind must be a string");
  const std::string kind = kindv.get<std::string>();
  if (kind == "bernoulli") {
    return ShiftMeasure::bernoulli(sys, double_list(field(j, "p"), "measure p"));
  }
  if (kind == "markov") {
    const json& pj = field(j, "P");
    if (!pj.is_array()) throw SpecError("measure P must be a matrix");
    std::vector<std::vector<double>> P;
    for (const json& row : pj) P.push_back(double_list(row, "measure P row"));
    std::vector<double> pi;
    if (j.contains("pi")) pi = double_list(j.at("pi"), "measure pi");
    return ShiftMeasure::markov(sys, std::move(P), std::move(pi));
  }
  throw SpecError("measure kind must be 'bernoulli' or 'markov'");
}

PartitionOfUnity build_partition(const json& j, const SystemPtr& sys) {
  if (!j.is_object()) throw SpecError("partition must be an object");
  const json& kindv = field(j, "kind");
  if (!kindv.is_string()) throw SpecError("partition kind must be a string");
  const std::string kind = kindv.get<std::string>();
  const int depth = int_field(j, "depth", 1, 12);
  if (kind == "cylinder") return make_cylinder_partition(sys, depth);
  if (kind == "smoothed") {
    const json& lv = field(j, "lambda");
    if (!lv.is_number()) throw SpecError("partition lambda must be a number");
    return make_smoothed_partition(sys, depth, lv.get<double>());
  }
  if (kind == "explicit") {
    const json& mj = field(j, "members");
    if (!mj.is_array() || mj.empty()) throw SpecError("partition members must be a nonempty array");
    const int W = sys->words(depth).count();
    std::vector<LocallyConstantFunction> members;
    for (const json& row : mj) {
      std::vector<double> vals = double_list(row, "partition member");
      if (static_cast<int>(vals.size()) != W)
        throw SpecError("partition member must list one value per admissible word (" +
                        std::to_string(W) + " at depth " + std::to_string(depth) + ")");
      members.emplace_back(sys, depth, std::move(vals));
    }
    return PartitionOfUnity(std::move(members));
  }
  throw SpecError("partition kind must be 'cylinder', 'smoothed' or 'explicit'");
}

Potential build_potential(const json& j, const SystemPtr& sys) {
  if (!j.is_object()) throw SpecError("potential must be an object");
  const json& kindv = field(j, "kind");
  if (!kindv.is_string()) throw SpecError("potential kind must be a string");
  const std::string kind = kindv.get<std::string>();
  if (kind == "constant") {
    const json& v = field(j, "value");
    if (!v.is_number()) throw SpecError("potential value must be a number");
    return LocallyConstantFunction::constant(sys, v.get<double>());
  }
  if (kind == "table") {
    const int depth = int_field(j, "depth", 1, 12);
    std::vector<double> vals = double_list(field(j, "values"), "potential values");
    const int W = sys->words(depth).count();
    if (static_cast<int>(vals.size()) != W)
      throw SpecError("potential must list one value per admissible word (" + std::to_string(W) +
                      " at depth " + std::to_string(depth) + ")");
    return LocallyConstantFunction(sys, depth, std::move(vals));
  }
  throw SpecError("potential kind must be 'constant' or 'table'");
}

TopologicalFamily build_family_points(const json& spec) {
  TopologicalFamily fam;
  const json& pts = field(spec, "points");
  if (!pts.is_array() || pts.empty()) throw SpecError("points must be a nonempty array of labels");
  for (const json& p : pts) {
    if (!p.is_string()) throw SpecError("points must be strings");
    fam.labels.push_back(p.get<std::string>());
  }
  if (spec.contains("sequences")) {
    const json& seqs = spec.at("sequences");
    if (!seqs.is_array()) throw SpecError("sequences must be an array");
    for (const json& s : seqs) {
      if (!s.is_array() || s.size() < 2)
        throw SpecError("each sequence needs at least one member and its limit");
      FamilySequence fs;
      for (size_t i = 0; i + 1 < s.size(); ++i) {
        if (!s[i].is_number_integer()) throw SpecError("sequence entries must be point indices");
        fs.members.push_back(s[i].get<int>());
      }
      if (!s.back().is_number_integer()) throw SpecError("sequence limit must be a point index");
      fs.limit = s.back().get<int>();
      fam.sequences.push_back(std::move(fs));
    }
  }
  fam.validate();
  return fam;
}

Candidate build_candidate(const json& spec, const TopologicalFamily& fam) {
  Candidate c;
  c.limit = double_list(field(spec, "h"), "h");
  const json& hk = field(spec, "h_k");
  if (!hk.is_array() || hk.empty()) throw SpecError("h_k must be a nonempty array of levels");
  for (const json& level : hk) c.levels.push_back(double_list(level, "h_k level"));
  if (spec.contains("tolerance")) {
    const json& t = spec.at("tolerance");
    if (!t.is_number() || t.get<double>() <= 0.0)
      throw SpecError("tolerance must be a positive number");
    c.tolerance = t.get<double>();
  }
  validate_candidate(fam, c);
  return c;
}

// trace emission ------------------------------------------------------------

std::vector<double> running_inf_of(const std::vector<double>& values) {
  std::vector<double> inf(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    const double r = values[i] / static_cast<double>(i + 1);
    inf[i] = i == 0 ? r : std::min(inf[i - 1], r);
  }
  return inf;
}

std::string trace_csv(const std::vector<double>& values) {
  std::ostringstream out;
  out << "n,a_n,ratio,inf_ratio,diff\n";
  const std::vector<double> inf = running_inf_of(values);
  for (size_t i = 0; i < values.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double diff = i == 0 ? values[0] : values[i] - values[i - 1];
    out << (i + 1) << ',' << fmt(values[i]) << ',' << fmt(values[i] / n) << ',' << fmt(inf[i])
        << ',' << fmt(diff) << '\n';
  }
  return out.str();
}

json trace_rows(const std::vector<double>& values) {
  json rows = json::array();
  const std::vector<double> inf = running_inf_of(values);
  for (size_t i = 0; i < values.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    rows.push_back({{"n", i + 1},
                    {"a_n", values[i]},
                    {"ratio", values[i] / n},
                    {"inf_ratio", inf[i]},
                    {"diff", i == 0 ? values[0] : values[i] - values[i - 1]}});
  }
  return rows;
}

std::string matrix_csv(const std::vector<std::vector<double>>& entries) {
  std::ostringstream out;
  for (const std::vector<double>& row : entries) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << fmt(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string artifact_path(const std::string& out_dir, const std::string& stem,
                          const std::string& ext) {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char ts[32];
  std::strftime(ts, sizeof ts, "%Y%m%dT%H%M%S", &tm);
  const std::filesystem::path dir(out_dir);
  std::filesystem::path p = dir / (stem + "_" + ts + "." + ext);
  for (int c = 2; std::filesystem::exists(p); ++c)
    p = dir / (stem + "_" + ts + "_" + std::to_string(c) + "." + ext);
  return p.string();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write artifact: " + path);
  out << content;
}

// task execution ------------------------------------------------------------

struct TaskContext {
  const RunOptions* options;
  EvalBudget* budget;
  RunResult* result;

  void emit(const std::string& stem, const std::string& csv, const json& body) const {
    const bool as_json = options->format == "json";
    const std::string path = artifact_path(options->out_dir, stem, as_json ? "json" : "csv");
    write_text(path, as_json ? body.dump(2) + "\n" : csv);
    result->artifacts.push_back(path);
  }
};

void run_entropy(const json& spec, const TaskContext& ctx) {
  SystemPtr sys = build_system(field(spec, "system"));
  PartitionOfUnity p = build_partition(field(spec, "partition"), sys);
  const int horizon = int_field(spec, "horizon", 1, kMaxHorizon);
  std::vector<double> values;
  json extra;
  if (spec.contains("measure")) {
    ShiftMeasure mu = build_measure(spec.at("measure"), sys);
    SubadditiveTrace trace = metric_entropy_trace(mu, p, horizon, ctx.budget);
    values = trace.values();
    const LimitEstimate est = fekete(trace);
    extra = {{"kind", "metric"},
             {"inf_ratio", est.inf_ratio},
             {"last_difference", est.last_difference},
             {"converged", est.converged}};
  } else {
    SubadditiveTrace trace = topological_entropy_trace(p, horizon, ctx.budget);
    values = trace.values();
    const LimitEstimate est = fekete(trace);
    extra = {{"kind", "topological"}, {"inf_ratio", est.inf_ratio}, {"converged", est.converged}};
  }
  json body = {{"task", "entropy"}, {"rows", trace_rows(values)}, {"estimate", extra}};
  ctx.emit("entropy", trace_csv(values), body);
}

void run_pressure(const json& spec, const TaskContext& ctx) {
  SystemPtr sys = build_system(field(spec, "system"));
  PartitionOfUnity p = build_partition(field(spec, "partition"), sys);
  Potential g = build_potential(field(spec, "potential"), sys);
  const int horizon = int_field(spec, "horizon", 1, kMaxHorizon);
  SubadditiveTrace trace = pressure_trace(g, p, horizon, ctx.budget);
  const LimitEstimate est = fekete(trace);
  json body = {{"task", "pressure"},
               {"rows", trace_rows(trace.values())},
               {"estimate", {{"inf_ratio", est.inf_ratio}, {"converged", est.converged}}}};
  ctx.emit("pressure", trace_csv(trace.values()), body);
}

void run_conditional(const json& spec, const TaskContext& ctx) {
  SystemPtr sys = build_system(field(spec, "system"));
  PartitionOfUnity measured = build_partition(field(spec, "measured"), sys);
  PartitionOfUnity conditioning = build_partition(field(spec, "conditioning"), sys);
  const int horizon = int_field(spec, "horizon", 1, kMaxHorizon);
  std::string mode = "weighted";
  if (spec.contains("mode")) {
    if (!spec.at("mode").is_string()) throw SpecError("mode must be a string");
    mode = spec.at("mode").get<std::string>();
    if (mode != "weighted" && mode != "max")
      throw SpecError("mode must be 'weighted' or 'max'");
  }
  std::vector<double> values;
  json est;
  if (mode == "max") {
    SubadditiveTrace trace = conditional_entropy_max_trace(measured, conditioning, horizon, ctx.budget);
    values = trace.values();
    const LimitEstimate e = fekete(trace);
    est = {{"mode", "max"}, {"inf_ratio", e.inf_ratio}, {"converged", e.converged}};
  } else {
    values = conditional_entropy_values(measured, conditioning, horizon, ctx.budget);
    const LimsupEstimate e = tail_ratio_estimate(values);
    est = {{"mode", "weighted"},
           {"tail_max_ratio", e.tail_max_ratio},
           {"last_ratio", e.last_ratio}};
  }
  json body = {{"task", "conditional"}, {"rows", trace_rows(values)}, {"estimate", est}};
  ctx.emit("conditional", trace_csv(values), body);
}

void run_tail(const json& spec, const TaskContext& ctx) {
  SystemPtr sys = build_system(field(spec, "system"));
  const json& famj = field(spec, "family");
  if (!famj.is_array() || famj.empty())
    throw SpecError("family must be a nonempty array of partitions");
  std::vector<PartitionOfUnity> family;
  for (const json& pj : famj) family.push_back(build_partition(pj, sys));
  const int horizon = int_field(spec, "horizon", 1, kMaxHorizon);
  TailMatrix matrix =
      spec.contains("potential")
          ? tail_pressure_matrix(build_potential(spec.at("potential"), sys), family, horizon,
                                 ctx.budget)
          : tail_entropy_matrix(family, horizon, ctx.budget);
  json body = {{"task", "tail"}, {"horizon", matrix.horizon}, {"entries", matrix.entries}};
  ctx.emit("tail", matrix_csv(matrix.entries), body);
  if (spec.contains("measures")) {
    const json& mj = spec.at("measures");
    if (!mj.is_array() || mj.empty())
      throw SpecError("measures must be a nonempty array");
    std::vector<ShiftMeasure> mus;
    for (const json& one : mj) mus.push_back(build_measure(one, sys));
    MetricTailTable table = metric_tail_table(mus, family, horizon, ctx.budget);
    json tbody = {{"task", "tail"}, {"horizon", table.horizon}, {"tails", table.tails}};
    ctx.emit("tail_metric", matrix_csv(table.tails), tbody);
  }
}

void run_structure(const json& spec, const TaskContext& ctx) {
  TopologicalFamily fam = build_family_points(spec);
  Candidate cand = build_candidate(spec, fam);
  std::vector<double> gammas = {0.05, 0.1, 0.2};
  if (spec.contains("gammas")) gammas = double_list(spec.at("gammas"), "gammas");
  TransfiniteTrace trace = transfinite_sequence(fam, cand);
  WitnessTable inc = almost_increasing_certificate(cand.levels, gammas);
  json body = {{"task", "structure"},
               {"points", fam.labels},
               {"u", trace.u},
               {"order", trace.order},
               {"stabilized", trace.stabilized},
               {"tails_certified", trace.tails_certified},
               {"almost_increasing",
                {{"gammas", inc.gammas}, {"witness", inc.witness}, {"pass", inc.pass}}}};
  if (spec.contains("envelope")) {
    PointVector env = double_list(spec.at("envelope"), "envelope");
    SuperenvelopeVerdict v = check_superenvelope(fam, cand, env, cand.tolerance);
    body["superenvelope"] = {{"dominates", v.dominates},
                             {"defect_sup", v.defect_sup},
                             {"defect_vanishes", v.defect_vanishes},
                             {"pass", v.pass}};
  }
  if (spec.contains("reference")) {
    if (!spec.at("reference").is_number()) throw SpecError("reference must be a number");
    TailVariationalReport r =
        tail_variational_check(fam, cand, spec.at("reference").get<double>(), cand.tolerance);
    body["tail_variational"] = {
        {"u1_peak", r.u1_peak}, {"reference", r.reference}, {"pass", r.pass}};
  }
  std::ostringstream csv;
  csv << "alpha";
  for (const std::string& l : fam.labels) csv << ',' << l;
  csv << '\n';
  for (size_t a = 0; a < trace.u.size(); ++a) {
    csv << a;
    for (double v : trace.u[a]) csv << ',' << fmt(v);
    csv << '\n';
  }
  ctx.emit("structure", csv.str(), body);
}

void run_product_check(const json& spec, const TaskContext& ctx) {
  const json& lj = field(spec, "left");
  const json& rj = field(spec, "right");
  SystemPtr lsys = build_system(field(lj, "system"));
  SystemPtr rsys = build_system(field(rj, "system"));
  ShiftMeasure lmu = build_measure(field(lj, "measure"), lsys);
  ShiftMeasure rmu = build_measure(field(rj, "measure"), rsys);
  PartitionOfUnity lp = build_partition(field(lj, "partition"), lsys);
  PartitionOfUnity rp = build_partition(field(rj, "partition"), rsys);
  const int horizon = int_field(spec, "horizon", 1, kMaxHorizon);
  ProductCheckReport rep = product_entropy_check(lmu, lp, rmu, rp, horizon, ctx.budget);
  std::ostringstream csv;
  csv << "n,left,right,product,lower_ok,upper_ok\n";
  for (int n = 0; n < horizon; ++n)
    csv << (n + 1) << ',' << fmt(rep.left[n]) << ',' << fmt(rep.right[n]) << ','
        << fmt(rep.product[n]) << ',' << int(rep.lower_ok[n]) << ',' << int(rep.upper_ok[n])
        << '\n';
  json body = {{"task", "product-check"}, {"left", rep.left},     {"right", rep.right},
               {"product", rep.product}, {"lower_ok", rep.lower_ok}, {"upper_ok", rep.upper_ok},
               {"pass", rep.pass}};
  ctx.emit("product_check", csv.str(), body);
}

const std::set<std::string>& allowed_keys(const std::string& task) {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"entropy", {"task", "system", "partition", "measure", "horizon"}},
      {"pressure", {"task", "system", "partition", "potential", "horizon"}},
      {"conditional", {"task", "system", "measured", "conditioning", "mode", "horizon"}},
      {"tail", {"task", "system", "family", "potential", "measures", "horizon"}},
      {"structure",
       {"task", "points", "sequences", "h", "h_k", "tolerance", "gammas", "envelope", "reference"}},
      {"product-check", {"task", "left", "right", "horizon"}},
  };
  return keys.at(task);
}

void check_structure(const json& spec, std::vector<std::string>& errors) {
  if (!spec.is_object()) {
    errors.push_back("spec must be a JSON object");
    return;
  }
  std::string task;
  if (!spec.contains("task") || !spec.at("task").is_string()) {
    errors.push_back("missing string field 'task'");
    return;
  }
  task = spec.at("task").get<std::string>();
  const std::vector<std::string> tasks = list_tasks();
  if (std::find(tasks.begin(), tasks.end(), task) == tasks.end()) {
    errors.push_back("unknown task '" + task + "'");
    return;
  }
  for (const auto& [key, value] : spec.items()) {
    (void)value;
    if (!allowed_keys(task).count(key))
      errors.push_back("task '" + task + "' does not accept field '" + key + "'");
  }
  // dry-run the builders so schema problems surface one by one
  const auto attempt = [&](const char* what, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      errors.push_back(std::string(what) + ": " + e.what());
    }
  };
  if (task == "structure") {
    attempt("structure", [&] {
      TopologicalFamily fam = build_family_points(spec);
      build_candidate(spec, fam);
      if (spec.contains("gammas")) double_list(spec.at("gammas"), "gammas");
      if (spec.contains("envelope")) {
        PointVector env = double_list(spec.at("envelope"), "envelope");
        if (env.size() != fam.labels.size())
          throw SpecError("envelope size does not match point count");
      }
    });
    return;
  }
  if (task == "product-check") {
    attempt("left", [&] {
      const json& side = field(spec, "left");
      SystemPtr sys = build_system(field(side, "system"));
      build_measure(field(side, "measure"), sys);
      build_partition(field(side, "partition"), sys);
    });
    attempt("right", [&] {
      const json& side = field(spec, "right");
      SystemPtr sys = build_system(field(side, "system"));
      build_measure(field(side, "measure"), sys);
      build_partition(field(side, "partition"), sys);
    });
    attempt("horizon", [&] { int_field(spec, "horizon", 1, kMaxHorizon); });
    return;
  }
  SystemPtr sys;
  attempt("system", [&] { sys = build_system(field(spec, "system")); });
  if (!sys) return;
  attempt("horizon", [&] { int_field(spec, "horizon", 1, kMaxHorizon); });
  if (task == "entropy") {
    attempt("partition", [&] { build_partition(field(spec, "partition"), sys); });
    if (spec.contains("measure"))
      attempt("measure", [&] { build_measure(spec.at("measure"), sys); });
  } else if (task == "pressure") {
    attempt("partition", [&] { build_partition(field(spec, "partition"), sys); });
    attempt("potential", [&] { build_potential(field(spec, "potential"), sys); });
  } else if (task == "conditional") {
    attempt("measured", [&] { build_partition(field(spec, "measured"), sys); });
    attempt("conditioning", [&] { build_partition(field(spec, "conditioning"), sys); });
    if (spec.contains("mode")) {
      const json& mode = spec.at("mode");
      if (!mode.is_string() ||
          (mode.get<std::string>() != "weighted" && mode.get<std::string>() != "max"))
        errors.push_back("mode: must be 'weighted' or 'max'");
    }
  } else if (task == "tail") {
    attempt("family", [&] {
      const json& famj = field(spec, "family");
      if (!famj.is_array() || famj.empty())
        throw SpecError("family must be a nonempty array of partitions");
      for (const json& pj : famj) build_partition(pj, sys);
    });
    if (spec.contains("potential"))
      attempt("potential", [&] { build_potential(spec.at("potential"), sys); });
    if (spec.contains("measures"))
      attempt("measures", [&] {
        const json& mj = spec.at("measures");
        if (!mj.is_array() || mj.empty()) throw SpecError("must be a nonempty array");
        for (const json& one : mj) build_measure(one, sys);
      });
  }
}

json load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open spec file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("not valid JSON: ") + e.what());
  }
  return j;
}

}  // namespace

std::vector<std::string> list_tasks() {
  return {"entropy", "pressure", "conditional", "tail", "structure", "product-check"};
}

std::vector<std::string> validate_spec(const std::string& path) {
  std::vector<std::string> errors;
  json spec;
  try {
    spec = load_spec(path);
  } catch (const std::exception& e) {
    errors.push_back(e.what());
    return errors;
  }
  check_structure(spec, errors);
  return errors;
}

RunResult run(const RunOptions& options) {
  RunResult result;
  result.errors = validate_spec(options.spec_path);
  if (!result.errors.empty()) {
    result.exit_code = 2;
    return result;
  }
  const json spec = load_spec(options.spec_path);
  const std::string task = spec.at("task").get<std::string>();
  EvalBudget budget(options.budget);
  TaskContext ctx{&options, &budget, &result};
  try {
    std::filesystem::create_directories(options.out_dir);
    if (task == "entropy")
      run_entropy(spec, ctx);
    else if (task == "pressure")
      run_pressure(spec, ctx);
    else if (task == "conditional")
      run_conditional(spec, ctx);
    else if (task == "tail")
      run_tail(spec, ctx);
    else if (task == "structure")
      run_structure(spec, ctx);
    else
      run_product_check(spec, ctx);
  } catch (const budget_exceeded_error& e) {
    result.exit_code = 3;
    result.errors.push_back(e.what());
  } catch (const std::exception& e) {
    result.exit_code = 1;
    result.errors.push_back(e.what());
  }
  return result;
}

}  // namespace punity::cli
