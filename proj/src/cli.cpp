#include "ballbasis/cli.hpp"

#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "ballbasis/covering.hpp"
#include "ballbasis/functionals.hpp"
#include "ballbasis/io.hpp"
#include "ballbasis/operators.hpp"
#include "ballbasis/rng.hpp"
#include "ballbasis/util.hpp"
#include "ballbasis/verify.hpp"
#include "ballbasis/weights.hpp"

namespace ballbasis {

namespace {

constexpr const char* kVersion = "0.1.0";

struct BasisSpec {
  std::string kind = "dyadic";
  int depth = 4;
  int n = 16;
  std::string weights_file;
  std::string partitions_file;
  std::string basis_file;  // load a serialized basis instead of building

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--kind", kind, "basis kind: dyadic|intervals|martingale");
    cmd->add_option("--depth", depth, "dyadic depth");
    cmd->add_option("--n", n, "interval atom count");
    cmd->add_option("--weights", weights_file, "CSV with a mu column for the atoms");
    cmd->add_option("--partitions", partitions_file, "JSON list of partitions (martingale)");
    cmd->add_option("--in", basis_file, "serialized basis JSON");
  }

  json to_json() const {
    json j;
    j["kind"] = kind;
    j["depth"] = depth;
    j["n"] = n;
    if (!weights_file.empty()) j["weights"] = weights_file;
    if (!partitions_file.empty()) j["partitions"] = partitions_file;
    if (!basis_file.empty()) j["in"] = basis_file;
    return j;
  }

  BallBasis build() const {
    if (!basis_file.empty()) {
      return basis_from_json(json::parse(read_file(basis_file)));
    }
    std::optional<std::vector<double>> mu;
    if (!weights_file.empty()) mu = space_from_csv(read_file(weights_file)).mu;
    if (kind == "dyadic") {
      return build_dyadic(depth, mu ? &*mu : nullptr);
    }
    if (kind == "intervals") {
      return build_intervals(n, mu ? &*mu : nullptr);
    }
    if (kind == "martingale") {
      if (partitions_file.empty()) throw parameter_error("martingale needs --partitions");
      const auto pj = json::parse(read_file(partitions_file));
      auto parts = pj.get<std::vector<std::vector<std::vector<int>>>>();
      int atoms = 0;
      for (const auto& cell : parts.back()) atoms += static_cast<int>(cell.size());
      PointSpace space = mu ? PointSpace(std::vector<double>(mu->size(), 0.0), *mu)
                            : PointSpace::uniform_unit(atoms);
      if (mu) {
        std::vector<double> coords(mu->size());
        for (size_t i = 0; i < coords.size(); ++i) coords[i] = (static_cast<double>(i) + 0.5);
        space = PointSpace(std::move(coords), *mu);
      }
      return build_martingale(space, parts);
    }
    throw parameter_error("unknown basis kind: " + kind);
  }
};

struct FnSpec {
  std::string kind = "gaussian";  // gaussian|signs|spike|file|maximal|sharp-max|local-sharp
  std::uint64_t stream = 0;
  std::string path;
  double alpha = 0.9;  // for local-sharp
  double r = 1.0;

  void add_flags(CLI::App* cmd, const std::string& prefix) {
    cmd->add_option("--" + prefix + "-kind", kind,
                    "gaussian|signs|spike|file|maximal|sharp-max|local-sharp");
    cmd->add_option("--" + prefix + "-stream", stream, "rng stream index");
    cmd->add_option("--" + prefix + "-file", path, "CSV with a value column");
    cmd->add_option("--" + prefix + "-alpha", alpha, "alpha for local-sharp");
    cmd->add_option("--" + prefix + "-r", r, "exponent for maximal kinds");
  }

  json to_json() const {
    json j;
    j["kind"] = kind;
    j["stream"] = stream;
    if (!path.empty()) j["file"] = path;
    j["alpha"] = alpha;
    j["r"] = r;
    return j;
  }

  bool derived() const {
    return kind == "maximal" || kind == "sharp-max" || kind == "local-sharp";
  }

  RealFunction resolve(const BallBasis& basis, std::uint64_t seed,
                       const RealFunction* base) const {
    const PointSpace& space = basis.space();
    if (kind == "file") {
      const auto bundle = space_from_csv(read_file(path));
      if (!bundle.value) throw structural_error("CSV lacks a value column: " + path);
      if (static_cast<int>(bundle.value->size()) != space.size()) {
        throw structural_error("function length mismatch: " + path);
      }
      return RealFunction{*bundle.value};
    }
    if (derived()) {
      if (!base) throw parameter_error("derived function kind needs a base function");
      if (kind == "maximal") return maximal(basis, *base, r);
      if (kind == "sharp-max") return sharp_maximal(basis, *base, r);
      return local_sharp_maximal(basis, *base, alpha);
    }
    return sample_function(space, seed, stream, kind);
  }
};

struct WeightSpec {
  std::string kind = "lebesgue";
  double a = 1.0;
  int atom = 0;
  double mass = 0.0;
  double delta = 1.0;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--w-kind", kind, "lebesgue|power|atomic");
    cmd->add_option("--w-a", a, "power exponent");
    cmd->add_option("--w-atom", atom, "atomic: atom index");
    cmd->add_option("--w-mass", mass, "atomic: point mass");
    cmd->add_option("--w-delta", delta, "A-infinity exponent to certify");
  }

  json to_json() const {
    json j;
    j["kind"] = kind;
    j["a"] = a;
    j["atom"] = atom;
    j["mass"] = mass;
    j["delta"] = delta;
    return j;
  }

  WeightMeasure build(const PointSpace& space) const {
    if (kind == "lebesgue") return make_weight(WeightKind::lebesgue, space);
    if (kind == "power") return make_weight(WeightKind::power, space, a);
    if (kind == "atomic") return make_weight(WeightKind::atomic, space, 0.0, atom, mass);
    throw parameter_error("unknown weight kind: " + kind);
  }
};

int resolve_ball(const BallBasis& basis, const std::string& token) {
  if (token == "root") {
    for (const auto& b : basis.balls()) {
      if (b.members.size() == basis.space().size()) return b.id;
    }
    throw parameter_error("basis has no full-space ball to use as root");
  }
  const int id = std::stoi(token);
  if (id < 0 || id >= basis.ball_count()) throw parameter_error("ball id out of range");
  return id;
}

OperatorSpec make_operator(const std::string& name, const BallBasis& basis, double r,
                           int freq_count, const std::string& signs_text,
                           std::uint64_t seed) {
  if (name == "maximal") return OperatorSpec::maximal_op(basis, r);
  if (name == "hilbert") return OperatorSpec::hilbert(r);
  if (name == "carleson") {
    return OperatorSpec::carleson(default_frequencies(basis.space().size(), freq_count), r);
  }
  if (name == "martingale") {
    int levels = 0;
    for (const auto& b : basis.balls()) {
      if (b.level) levels = std::max(levels, *b.level);
    }
    std::vector<int> signs;
    if (!signs_text.empty()) {
      for (char c : signs_text) {
        if (c == '+') signs.push_back(1);
        else if (c == '-') signs.push_back(-1);
        else throw parameter_error("signs must be a +/- string");
      }
      if (static_cast<int>(signs.size()) != levels) {
        throw parameter_error("need one sign per refinement step");
      }
    } else {
      RngStream rng(seed, 777);
      for (int k = 0; k < levels; ++k) signs.push_back(rng.next_sign() > 0 ? 1 : -1);
    }
    return OperatorSpec::martingale(basis, std::move(signs));
  }
  throw parameter_error("unknown operator: " + name);
}

std::string hash_hex(const json& config) {
  const std::string dump = config.dump();
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64({dump.data(), dump.size()})));
  return std::string(buf);
}

json with_meta(json body, const json& config) {
  body["_meta"] = {{"version", kVersion}, {"config_hash", hash_hex(config)}};
  return body;
}

void emit(const json& body, const std::string& out_path) {
  const std::string text = body.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
  }
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(std::stod(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::stod(cur));
  return out;
}

// ---------------------------------------------------------------------------
// Bundle runner: executes the report list of an experiment config.
// ---------------------------------------------------------------------------

void require_keys(const json& config, const std::vector<std::string>& keys,
                  const std::string& where) {
  for (const auto& k : keys) {
    if (!config.contains(k)) {
      throw parameter_error("config missing required key '" + k + "' in " + where);
    }
  }
}

int run_bundle(const std::string& config_path, std::string out_dir_override) {
  const json config = json::parse(read_file(config_path));
  require_keys(config, {"seed", "basis", "run", "out_dir"}, "bundle");
  const auto seed = config.at("seed").get<std::uint64_t>();
  std::string out_dir =
      out_dir_override.empty() ? config.at("out_dir").get<std::string>() : out_dir_override;
  std::filesystem::create_directories(out_dir);

  BasisSpec bspec;
  {
    const json& jb = config.at("basis");
    require_keys(jb, {"kind"}, "basis");
    bspec.kind = jb.at("kind").get<std::string>();
    if (jb.contains("depth")) bspec.depth = jb.at("depth").get<int>();
    if (jb.contains("n")) bspec.n = jb.at("n").get<int>();
    if (jb.contains("weights")) bspec.weights_file = jb.at("weights").get<std::string>();
    if (jb.contains("partitions")) bspec.partitions_file = jb.at("partitions").get<std::string>();
    if (jb.contains("in")) bspec.basis_file = jb.at("in").get<std::string>();
  }
  const BallBasis basis = bspec.build();

  auto fn_from = [&](const json& j) {
    FnSpec s;
    if (j.contains("kind")) s.kind = j.at("kind").get<std::string>();
    if (j.contains("stream")) s.stream = j.at("stream").get<std::uint64_t>();
    if (j.contains("file")) s.path = j.at("file").get<std::string>();
    if (j.contains("alpha")) s.alpha = j.at("alpha").get<double>();
    if (j.contains("r")) s.r = j.at("r").get<double>();
    return s;
  };

  RealFunction f = config.contains("function")
                       ? fn_from(config.at("function")).resolve(basis, seed, nullptr)
                       : sample_function(basis.space(), seed, 0);
  std::optional<RealFunction> g;
  if (config.contains("g")) g = fn_from(config.at("g")).resolve(basis, seed, &f);

  WeightSpec wspec;
  if (config.contains("weight")) {
    const json& jw = config.at("weight");
    if (jw.contains("kind")) wspec.kind = jw.at("kind").get<std::string>();
    if (jw.contains("a")) wspec.a = jw.at("a").get<double>();
    if (jw.contains("atom")) wspec.atom = jw.at("atom").get<int>();
    if (jw.contains("mass")) wspec.mass = jw.at("mass").get<double>();
    if (jw.contains("delta")) wspec.delta = jw.at("delta").get<double>();
  }

  json grids = config.contains("grids") ? config.at("grids") : json::object();
  auto grid_or = [&](const std::string& key, std::vector<double> fallback) {
    if (grids.contains(key)) return grids.at(key).get<std::vector<double>>();
    return fallback;
  };

  int rc = 0;
  for (const auto& item : config.at("run")) {
    const std::string name = item.get<std::string>();
    const std::string stem = out_dir + "/" + name;
    if (name == "basis_check") {
      const auto rep = verify_axioms(basis);
      emit(with_meta(axiom_report_to_json(rep), config), stem + ".json");
      if (!rep.pass()) rc = 1;
    } else if (name == "weights_check") {
      const auto w = wspec.build(basis.space());
      const auto rep = ainfty_check(w, basis, wspec.delta);
      emit(with_meta(ainfty_report_to_json(rep), config), stem + ".json");
    } else if (name == "dominate") {
      if (!g) throw parameter_error("dominate needs a g spec");
      const auto mode = config.value("mode", std::string("strong")) == "weak"
                            ? DominationMode::weak
                            : DominationMode::strong;
      const auto prof = domination_profile(
          basis, f, *g, mode, grid_or("alphas", {0.5, 0.75, 0.9, 0.95}));
      emit(with_meta(domination_to_json(prof), config), stem + ".json");
    } else if (name == "goodlambda") {
      if (!g) throw parameter_error("goodlambda needs a g spec");
      auto w = wspec.build(basis.space());
      const auto cert = ainfty_check(w, basis, wspec.delta);
      w.gamma = cert.gamma;
      w.delta = cert.delta;
      const double alpha = config.value("alpha", 0.75);
      const double beta = config.value("beta", 1.0);
      const auto rep = good_lambda_report(basis, f, *g, w, alpha, beta,
                                          grid_or("lambda", default_lambda_grid(f)));
      emit(with_meta(good_lambda_to_json(rep), config), stem + ".json");
      std::vector<std::vector<std::string>> rows;
      for (size_t i = 0; i < rep.lambdas.size(); ++i) {
        rows.push_back({format_double(rep.lambdas[i]), format_double(rep.lhs[i]),
                        format_double(rep.rhs[i]), format_double(rep.ratio[i])});
      }
      write_file(stem + ".csv", csv_table({"lambda", "lhs", "rhs", "ratio"}, rows));
    } else if (name == "exptail") {
      if (!g) throw parameter_error("exptail needs a g spec");
      const int ball = resolve_ball(basis, config.value("ball", std::string("root")));
      const auto kind = config.value("tail", std::string("centered")) == "plain"
                            ? TailKind::plain
                            : TailKind::centered;
      const auto& B = basis.ball(ball).members;
      const auto rep = exp_tail_report(basis, f, *g, B,
                                       grid_or("t", default_t_grid(basis, f, *g, B, kind)),
                                       kind);
      emit(with_meta(exp_tail_to_json(rep), config), stem + ".json");
      std::vector<std::vector<std::string>> rows;
      for (size_t i = 0; i < rep.ts.size(); ++i) {
        rows.push_back({format_double(rep.ts[i]), format_double(rep.tail[i])});
      }
      write_file(stem + ".csv", csv_table({"t", "tail"}, rows));
    } else if (name == "tree") {
      const int ball = resolve_ball(basis, config.value("ball", std::string("root")));
      const double alpha = config.value("alpha", calderon_default_alpha(basis));
      const auto tree = calderon_tree(basis, f, ball, alpha);
      emit(with_meta(tree_to_json(tree), config), stem + ".json");
      write_file(stem + ".csv", tree_decay_csv(tree));
      if (!tree.all_a21 || !tree.all_a17) rc = 1;
    } else if (name == "normcomp") {
      if (!g) throw parameter_error("normcomp needs a g spec");
      const auto w = wspec.build(basis.space());
      const auto rep = norm_comparison(f, *g, w, grid_or("p", {1.0, 2.0, 4.0}));
      emit(with_meta(norm_comparison_to_json(rep), config), stem + ".json");
    } else if (name == "op_estimate") {
      require_keys(config, {"operator"}, "op_estimate");
      const json& jo = config.at("operator");
      auto op = make_operator(jo.value("kind", std::string("hilbert")), basis,
                              jo.value("r", 1.0), jo.value("freq_count", 16),
                              jo.value("signs", std::string()), seed);
      const int budget = jo.value("budget", 64);
      json body;
      body["localization"] = localization_estimate(op, basis, budget, seed);
      body["weak_norm"] = weak_norm_estimate(op, basis.space(), op.r, budget, seed);
      body["budget"] = budget;
      body["seed"] = seed;
      emit(with_meta(body, config), stem + ".json");
    } else if (name == "goodlambda_bo") {
      require_keys(config, {"operator"}, "goodlambda_bo");
      const json& jo = config.at("operator");
      auto op = make_operator(jo.value("kind", std::string("hilbert")), basis,
                              jo.value("r", 1.0), jo.value("freq_count", 16),
                              jo.value("signs", std::string()), seed);
      const int budget = jo.value("budget", 64);
      op.localization_estimate = localization_estimate(op, basis, budget, seed);
      op.weak_norm_estimate = weak_norm_estimate(op, basis.space(), op.r, budget, seed);
      const auto tf = apply(op, basis.space(), f);
      const auto rep = good_lambda_bo(op, f, basis,
                                      grid_or("eps", log_grid(0.02, 0.5, 10)),
                                      grid_or("lambda", default_lambda_grid(tf)));
      emit(with_meta(bo_report_to_json(rep), config), stem + ".json");
    } else {
      throw parameter_error("unknown run item: " + name);
    }
  }
  return rc;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"ball-basis functionals, coverings, and inequality reports"};
  app.require_subcommand(1);

  // ---- basis ----
  auto* basis_cmd = app.add_subcommand("basis", "build or check ball bases");
  basis_cmd->require_subcommand(1);
  auto* basis_build = basis_cmd->add_subcommand("build", "construct and serialize a basis");
  BasisSpec bb_spec;
  std::string bb_out;
  bb_spec.add_flags(basis_build);
  basis_build->add_option("--out", bb_out, "output JSON path");
  auto* basis_check = basis_cmd->add_subcommand("check", "verify the basis axioms");
  BasisSpec bc_spec;
  std::string bc_report;
  bc_spec.add_flags(basis_check);
  basis_check->add_option("--report", bc_report, "report JSON path");

  // ---- functional eval ----
  auto* functional_cmd = app.add_subcommand("functional", "evaluate scalar functionals");
  auto* fe = functional_cmd->add_subcommand("eval", "evaluate one functional");
  BasisSpec fe_basis;
  FnSpec fe_f;
  std::string fe_which = "osc";
  std::string fe_ball = "root";
  double fe_alpha = 0.5, fe_r = 1.0;
  std::uint64_t fe_seed = 12345;
  std::string fe_out;
  fe_basis.add_flags(fe);
  fe_f.add_flags(fe, "f");
  fe->add_option("--which", fe_which,
                 "osc|osc_alpha|inf_alpha|inf_ball|median|avg|sharp_avg|starred_avg|"
                 "starred_sharp|maximal|sharp_maximal|local_sharp_maximal");
  fe->add_option("--ball", fe_ball, "ball id or 'root'");
  fe->add_option("--alpha", fe_alpha, "alpha parameter");
  fe->add_option("--r", fe_r, "exponent r");
  fe->add_option("--seed", fe_seed, "master seed");
  fe->add_option("--out", fe_out, "output JSON path");

  // ---- op ----
  auto* op_cmd = app.add_subcommand("op", "apply operators / estimate constants");
  op_cmd->require_subcommand(1);
  auto* op_apply = op_cmd->add_subcommand("apply", "apply an operator to a function");
  BasisSpec oa_basis;
  FnSpec oa_f;
  std::string oa_op = "hilbert", oa_signs, oa_out;
  double oa_r = 1.0;
  int oa_freqs = 16;
  std::uint64_t oa_seed = 12345;
  oa_basis.add_flags(op_apply);
  oa_f.add_flags(op_apply, "f");
  op_apply->add_option("--op", oa_op, "maximal|hilbert|martingale|carleson");
  op_apply->add_option("--r", oa_r, "exponent r");
  op_apply->add_option("--freq-count", oa_freqs, "carleson frequency count");
  op_apply->add_option("--signs", oa_signs, "martingale sign string, e.g. ++-+");
  op_apply->add_option("--seed", oa_seed, "master seed");
  op_apply->add_option("--out", oa_out, "output CSV path");

  auto* op_est = op_cmd->add_subcommand("estimate", "empirical operator constants");
  BasisSpec oe_basis;
  std::string oe_op = "hilbert", oe_which = "localization", oe_signs, oe_out;
  double oe_r = 1.0;
  int oe_freqs = 16, oe_budget = 64;
  std::uint64_t oe_seed = 12345;
  oe_basis.add_flags(op_est);
  op_est->add_option("--op", oe_op, "maximal|hilbert|martingale|carleson");
  op_est->add_option("--which", oe_which, "localization|weaknorm");
  op_est->add_option("--r", oe_r, "exponent r");
  op_est->add_option("--freq-count", oe_freqs, "carleson frequency count");
  op_est->add_option("--signs", oe_signs, "martingale sign string");
  op_est->add_option("--budget", oe_budget, "sample budget");
  op_est->add_option("--seed", oe_seed, "master seed");
  op_est->add_option("--out", oe_out, "output JSON path");

  // ---- dominate ----
  auto* dom = app.add_subcommand("dominate", "domination profile beta(alpha)");
  BasisSpec dom_basis;
  FnSpec dom_f, dom_g;
  std::string dom_mode = "strong", dom_alphas, dom_out;
  std::uint64_t dom_seed = 12345;
  dom_basis.add_flags(dom);
  dom_f.add_flags(dom, "f");
  dom_g.add_flags(dom, "g");
  dom->add_option("--mode", dom_mode, "weak|strong");
  dom->add_option("--alphas", dom_alphas, "comma-separated alpha grid");
  dom->add_option("--seed", dom_seed, "master seed");
  dom->add_option("--out", dom_out, "output JSON path");

  // ---- goodlambda ----
  auto* gl = app.add_subcommand("goodlambda", "good-lambda ratio table");
  BasisSpec gl_basis;
  FnSpec gl_f, gl_g;
  WeightSpec gl_w;
  bool gl_bo = false;
  std::string gl_op = "hilbert", gl_signs, gl_out, gl_eps, gl_lambdas;
  double gl_alpha = 0.75, gl_beta = 1.0, gl_r = 1.0;
  int gl_freqs = 16, gl_budget = 64;
  std::uint64_t gl_seed = 12345;
  gl_basis.add_flags(gl);
  gl_f.add_flags(gl, "f");
  gl_g.add_flags(gl, "g");
  gl_w.add_flags(gl);
  gl->add_flag("--bo", gl_bo, "operator-vs-maximal variant");
  gl->add_option("--op", gl_op, "operator for --bo");
  gl->add_option("--signs", gl_signs, "martingale sign string");
  gl->add_option("--freq-count", gl_freqs, "carleson frequency count");
  gl->add_option("--budget", gl_budget, "estimate budget for --bo");
  gl->add_option("--alpha", gl_alpha, "certified alpha");
  gl->add_option("--beta", gl_beta, "certified beta");
  gl->add_option("--r", gl_r, "exponent r");
  gl->add_option("--eps", gl_eps, "comma-separated eps grid (--bo)");
  gl->add_option("--lambdas", gl_lambdas, "comma-separated lambda grid");
  gl->add_option("--seed", gl_seed, "master seed");
  gl->add_option("--out", gl_out, "output JSON path");

  // ---- exptail ----
  auto* et = app.add_subcommand("exptail", "exponential tail report");
  BasisSpec et_basis;
  FnSpec et_f, et_g;
  std::string et_ball = "root", et_out, et_ts;
  bool et_plain = false;
  std::uint64_t et_seed = 12345;
  et_basis.add_flags(et);
  et_f.add_flags(et, "f");
  et_g.add_flags(et, "g");
  et->add_option("--ball", et_ball, "ball id or 'root'");
  et->add_flag("--plain", et_plain, "tail of |f| > t|g| (no median centering)");
  et->add_option("--ts", et_ts, "comma-separated t grid");
  et->add_option("--seed", et_seed, "master seed");
  et->add_option("--out", et_out, "output JSON path");

  // ---- normcomp ----
  auto* nc = app.add_subcommand("normcomp", "weighted norm ratio table");
  BasisSpec nc_basis;
  FnSpec nc_f, nc_g;
  WeightSpec nc_w;
  std::string nc_ps = "1,2,4", nc_out;
  std::uint64_t nc_seed = 12345;
  nc_basis.add_flags(nc);
  nc_f.add_flags(nc, "f");
  nc_g.add_flags(nc, "g");
  nc_w.add_flags(nc);
  nc->add_option("--p", nc_ps, "comma-separated p grid");
  nc->add_option("--seed", nc_seed, "master seed");
  nc->add_option("--out", nc_out, "output JSON path");

  // ---- tree ----
  auto* tree_cmd = app.add_subcommand("tree", "generation structure of good sets");
  auto* tree_build = tree_cmd->add_subcommand("build", "construct and serialize a tree");
  BasisSpec tr_basis;
  FnSpec tr_f;
  std::string tr_ball = "root", tr_out, tr_csv;
  double tr_alpha = 0.0;
  std::uint64_t tr_seed = 12345;
  tr_basis.add_flags(tree_build);
  tr_f.add_flags(tree_build, "f");
  tree_build->add_option("--ball", tr_ball, "root ball id or 'root'");
  tree_build->add_option("--alpha", tr_alpha, "tree alpha (0 = basis default)");
  tree_build->add_option("--seed", tr_seed, "master seed");
  tree_build->add_option("--out", tr_out, "output JSON path");
  tree_build->add_option("--csv", tr_csv, "decay CSV path");

  // ---- weights ----
  auto* weights_cmd = app.add_subcommand("weights", "weight measures");
  auto* wc = weights_cmd->add_subcommand("check", "A-infinity certification");
  BasisSpec wc_basis;
  WeightSpec wc_w;
  std::string wc_out;
  wc_basis.add_flags(wc);
  wc_w.add_flags(wc);
  wc->add_option("--out", wc_out, "output JSON path");

  // ---- report bundle ----
  auto* report_cmd = app.add_subcommand("report", "experiment bundles");
  auto* bundle = report_cmd->add_subcommand("bundle", "run a config file end to end");
  std::string bundle_config, bundle_out_dir;
  bundle->add_option("--config", bundle_config, "experiment config JSON")->required();
  bundle->add_option("--out-dir", bundle_out_dir, "override the config's out_dir");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      return app.exit(e);
    }
    std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  try {
    if (basis_build->parsed()) {
      const auto basis = bb_spec.build();
      emit(with_meta(basis_to_json(basis), bb_spec.to_json()), bb_out);
      return 0;
    }
    if (basis_check->parsed()) {
      const auto basis = bc_spec.build();
      const auto rep = verify_axioms(basis);
      emit(with_meta(axiom_report_to_json(rep), bc_spec.to_json()), bc_report);
      return rep.pass() ? 0 : 1;
    }
    if (fe->parsed()) {
      const auto basis = fe_basis.build();
      const auto f = fe_f.resolve(basis, fe_seed, nullptr);
      const int ball = resolve_ball(basis, fe_ball);
      const auto& B = basis.ball(ball).members;
      json body;
      json config = fe_basis.to_json();
      config["which"] = fe_which;
      config["f"] = fe_f.to_json();
      config["alpha"] = fe_alpha;
      config["r"] = fe_r;
      config["seed"] = fe_seed;
      const PointSpace& space = basis.space();
      if (fe_which == "osc") body["value"] = osc(f, B);
      else if (fe_which == "osc_alpha") {
        const auto res = osc_alpha(space, f, B, fe_alpha);
        body["value"] = res.value;
        body["witness"] = res.witness.members();
      } else if (fe_which == "inf_alpha") body["value"] = inf_alpha(space, f, B, fe_alpha);
      else if (fe_which == "inf_ball") body["value"] = inf_ball(f, B);
      else if (fe_which == "median") body["value"] = median(space, f, B);
      else if (fe_which == "avg") body["value"] = avg(space, f, B, fe_r);
      else if (fe_which == "sharp_avg") body["value"] = sharp_avg(space, f, B, fe_r);
      else if (fe_which == "starred_avg") body["value"] = starred_avg(basis, f, B, fe_r);
      else if (fe_which == "starred_sharp") body["value"] = starred_sharp(basis, f, B, fe_r);
      else if (fe_which == "maximal") body["values"] = maximal(basis, f, fe_r).values;
      else if (fe_which == "sharp_maximal") body["values"] = sharp_maximal(basis, f, fe_r).values;
      else if (fe_which == "local_sharp_maximal") {
        body["values"] = local_sharp_maximal(basis, f, fe_alpha).values;
      } else {
        throw parameter_error("unknown functional: " + fe_which);
      }
      emit(with_meta(body, config), fe_out);
      return 0;
    }
    if (op_apply->parsed()) {
      const auto basis = oa_basis.build();
      const auto f = oa_f.resolve(basis, oa_seed, nullptr);
      const auto op = make_operator(oa_op, basis, oa_r, oa_freqs, oa_signs, oa_seed);
      const auto tf = apply(op, basis.space(), f);
      SpaceBundle out{basis.space().coords(), basis.space().weights(), tf.values, std::nullopt};
      if (oa_out.empty()) {
        std::cout << space_to_csv(out);
      } else {
        write_file(oa_out, space_to_csv(out));
      }
      return 0;
    }
    if (op_est->parsed()) {
      const auto basis = oe_basis.build();
      const auto op = make_operator(oe_op, basis, oe_r, oe_freqs, oe_signs, oe_seed);
      json config = oe_basis.to_json();
      config["op"] = oe_op;
      config["which"] = oe_which;
      config["budget"] = oe_budget;
      config["seed"] = oe_seed;
      json body;
      if (oe_which == "localization") {
        body["estimate"] = localization_estimate(op, basis, oe_budget, oe_seed);
      } else if (oe_which == "weaknorm") {
        body["estimate"] = weak_norm_estimate(op, basis.space(), oe_r, oe_budget, oe_seed);
      } else {
        throw parameter_error("unknown estimate: " + oe_which);
      }
      body["kind"] = "empirical lower bound";
      body["budget"] = oe_budget;
      body["seed"] = oe_seed;
      emit(with_meta(body, config), oe_out);
      return 0;
    }
    if (dom->parsed()) {
      const auto basis = dom_basis.build();
      const auto f = dom_f.resolve(basis, dom_seed, nullptr);
      const auto g = dom_g.resolve(basis, dom_seed, &f);
      const auto mode = dom_mode == "weak" ? DominationMode::weak : DominationMode::strong;
      const auto alphas =
          dom_alphas.empty() ? std::vector<double>{0.5, 0.75, 0.9, 0.95} : parse_grid(dom_alphas);
      const auto prof = domination_profile(basis, f, g, mode, alphas);
      json config = dom_basis.to_json();
      config["mode"] = dom_mode;
      config["f"] = dom_f.to_json();
      config["g"] = dom_g.to_json();
      config["seed"] = dom_seed;
      emit(with_meta(domination_to_json(prof), config), dom_out);
      return 0;
    }
    if (gl->parsed()) {
      const auto basis = gl_basis.build();
      const auto f = gl_f.resolve(basis, gl_seed, nullptr);
      json config = gl_basis.to_json();
      config["f"] = gl_f.to_json();
      config["seed"] = gl_seed;
      config["bo"] = gl_bo;
      if (gl_bo) {
        auto op = make_operator(gl_op, basis, gl_r, gl_freqs, gl_signs, gl_seed);
        op.localization_estimate = localization_estimate(op, basis, gl_budget, gl_seed);
        op.weak_norm_estimate = weak_norm_estimate(op, basis.space(), gl_r, gl_budget, gl_seed);
        const auto tf = apply(op, basis.space(), f);
        const auto eps = gl_eps.empty() ? log_grid(0.02, 0.5, 10) : parse_grid(gl_eps);
        const auto lambdas =
            gl_lambdas.empty() ? default_lambda_grid(tf) : parse_grid(gl_lambdas);
        const auto rep = good_lambda_bo(op, f, basis, eps, lambdas);
        config["op"] = gl_op;
        emit(with_meta(bo_report_to_json(rep), config), gl_out);
        return 0;
      }
      const auto g = gl_g.resolve(basis, gl_seed, &f);
      auto w = gl_w.build(basis.space());
      const auto cert = ainfty_check(w, basis, gl_w.delta);
      w.gamma = cert.gamma;
      w.delta = cert.delta;
      const auto lambdas = gl_lambdas.empty() ? default_lambda_grid(f) : parse_grid(gl_lambdas);
      const auto rep = good_lambda_report(basis, f, g, w, gl_alpha, gl_beta, lambdas);
      config["g"] = gl_g.to_json();
      config["w"] = gl_w.to_json();
      emit(with_meta(good_lambda_to_json(rep), config), gl_out);
      return rep.inclusion_ok ? 0 : 1;
    }
    if (et->parsed()) {
      const auto basis = et_basis.build();
      const auto f = et_f.resolve(basis, et_seed, nullptr);
      const auto g = et_g.resolve(basis, et_seed, &f);
      const int ball = resolve_ball(basis, et_ball);
      const auto& B = basis.ball(ball).members;
      const auto kind = et_plain ? TailKind::plain : TailKind::centered;
      const auto ts = et_ts.empty() ? default_t_grid(basis, f, g, B, kind) : parse_grid(et_ts);
      const auto rep = exp_tail_report(basis, f, g, B, ts, kind);
      json config = et_basis.to_json();
      config["f"] = et_f.to_json();
      config["g"] = et_g.to_json();
      config["ball"] = et_ball;
      config["plain"] = et_plain;
      config["seed"] = et_seed;
      emit(with_meta(exp_tail_to_json(rep), config), et_out);
      return 0;
    }
    if (nc->parsed()) {
      const auto basis = nc_basis.build();
      const auto f = nc_f.resolve(basis, nc_seed, nullptr);
      const auto g = nc_g.resolve(basis, nc_seed, &f);
      const auto w = nc_w.build(basis.space());
      const auto rep = norm_comparison(f, g, w, parse_grid(nc_ps));
      json config = nc_basis.to_json();
      config["f"] = nc_f.to_json();
      config["g"] = nc_g.to_json();
      config["w"] = nc_w.to_json();
      config["p"] = nc_ps;
      config["seed"] = nc_seed;
      emit(with_meta(norm_comparison_to_json(rep), config), nc_out);
      return 0;
    }
    if (tree_build->parsed()) {
      const auto basis = tr_basis.build();
      const auto f = tr_f.resolve(basis, tr_seed, nullptr);
      const int ball = resolve_ball(basis, tr_ball);
      const double alpha = tr_alpha > 0.0 ? tr_alpha : calderon_default_alpha(basis);
      const auto tree = calderon_tree(basis, f, ball, alpha);
      json config = tr_basis.to_json();
      config["f"] = tr_f.to_json();
      config["alpha"] = alpha;
      config["ball"] = tr_ball;
      config["seed"] = tr_seed;
      emit(with_meta(tree_to_json(tree), config), tr_out);
      if (!tr_csv.empty()) write_file(tr_csv, tree_decay_csv(tree));
      return (tree.all_a21 && tree.all_a17) ? 0 : 1;
    }
    if (wc->parsed()) {
      const auto basis = wc_basis.build();
      const auto w = wc_w.build(basis.space());
      const auto rep = ainfty_check(w, basis, wc_w.delta);
      json config = wc_basis.to_json();
      config["w"] = wc_w.to_json();
      emit(with_meta(ainfty_report_to_json(rep), config), wc_out);
      return 0;
    }
    if (bundle->parsed()) {
      return run_bundle(bundle_config, bundle_out_dir);
    }
  } catch (const algorithm_failure& e) {
    std::cerr << json{{"error", "algorithm_failure"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const error& e) {
    std::cerr << json{{"error", "input"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace ballbasis
