#include "ballbasis/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ballbasis {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto append_row = [&out](const std::vector<std::string>& row) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out.push_back(',');
      out += row[i];
    }
    out += "\r\n";
  };
  append_row(header);
  for (const auto& r : rows) append_row(r);
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw structural_error("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw structural_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string space_to_csv(const SpaceBundle& bundle) {
  std::vector<std::string> header = {"index", "coord", "mu"};
  if (bundle.value) header.push_back("value");
  if (bundle.w) header.push_back("w");
  std::vector<std::vector<std::string>> rows;
  for (size_t i = 0; i < bundle.mu.size(); ++i) {
    std::vector<std::string> row = {std::to_string(i), format_double(bundle.coords[i]),
                                    format_double(bundle.mu[i])};
    if (bundle.value) row.push_back(format_double((*bundle.value)[i]));
    if (bundle.w) row.push_back(format_double((*bundle.w)[i]));
    rows.push_back(std::move(row));
  }
  return csv_table(header, rows);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

SpaceBundle space_from_csv(const std::string& content) {
  std::istringstream in(content);
  std::string line;
  if (!std::getline(in, line)) throw structural_error("empty CSV");
  const auto header = split_csv_line(line);
  int coord_col = -1, mu_col = -1, value_col = -1, w_col = -1;
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "coord") coord_col = static_cast<int>(i);
    if (header[i] == "mu") mu_col = static_cast<int>(i);
    if (header[i] == "value") value_col = static_cast<int>(i);
    if (header[i] == "w") w_col = static_cast<int>(i);
  }
  if (coord_col < 0 || mu_col < 0) throw structural_error("CSV needs coord and mu columns");
  SpaceBundle b;
  if (value_col >= 0) b.value.emplace();
  if (w_col >= 0) b.w.emplace();
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    auto cell = [&](int col) {
      if (col < 0 || col >= static_cast<int>(cells.size())) {
        throw structural_error("short CSV row");
      }
      return std::stod(cells[static_cast<size_t>(col)]);
    };
    b.coords.push_back(cell(coord_col));
    b.mu.push_back(cell(mu_col));
    if (value_col >= 0) b.value->push_back(cell(value_col));
    if (w_col >= 0) b.w->push_back(cell(w_col));
  }
  return b;
}

json basis_to_json(const BallBasis& basis) {
  json j;
  j["atoms"] = basis.space().size();
  j["coords"] = basis.space().coords();
  j["weights"] = basis.space().weights();
  json balls = json::array();
  for (const auto& b : basis.balls()) {
    json jb;
    jb["id"] = b.id;
    jb["members"] = b.members.members();
    if (b.level) jb["level"] = *b.level;
    balls.push_back(std::move(jb));
  }
  j["balls"] = std::move(balls);
  json hull;
  for (int id = 0; id < basis.ball_count(); ++id) {
    hull[std::to_string(id)] = basis.hull_id(id);
  }
  j["hull"] = std::move(hull);
  json constants;
  constants["K"] = basis.K();
  if (basis.eta()) constants["eta"] = *basis.eta();
  j["constants"] = std::move(constants);
  json flags;
  flags["has_atom_balls"] = basis.has_atom_balls();
  flags["is_doubling"] = basis.is_doubling();
  j["flags"] = std::move(flags);
  return j;
}

BallBasis basis_from_json(const json& j) {
  PointSpace space(j.at("coords").get<std::vector<double>>(),
                   j.at("weights").get<std::vector<double>>());
  std::vector<std::vector<int>> members;
  for (const auto& jb : j.at("balls")) {
    members.push_back(jb.at("members").get<std::vector<int>>());
  }
  std::vector<int> hull(members.size(), -1);
  for (const auto& [key, val] : j.at("hull").items()) {
    hull[static_cast<size_t>(std::stoi(key))] = val.get<int>();
  }
  return build_custom(space, std::move(members), &hull);
}

json axiom_report_to_json(const AxiomReport& rep) {
  json j;
  j["b1"] = {{"pass", rep.b1_pass}, {"witness_ball", rep.b1_witness}};
  j["b2"] = {{"pass", rep.b2_pass}, {"witness_pair", rep.b2_witness}};
  j["b3"] = {{"status", rep.b3_status}};
  j["b4"] = {{"pass", rep.b4_pass},
             {"feasible", rep.b4_feasible},
             {"witness_ball", rep.b4_witness_ball},
             {"witness_other", rep.b4_witness_other},
             {"K_declared", rep.K_declared},
             {"K_min", rep.K_min}};
  j["doubling"] = {{"pass", rep.doubling_pass},
                   {"eta_min", rep.doubling_pass ? json(rep.eta_min) : json("inf")},
                   {"witness_ball", rep.doubling_witness}};
  j["l9"] = {{"pass", rep.l9_pass}, {"witness_ball", rep.l9_witness}};
  j["pass"] = rep.pass();
  return j;
}

json ainfty_report_to_json(const AinftyReport& rep) {
  json j;
  j["pass"] = rep.pass;
  j["gamma"] = rep.gamma;
  j["delta"] = rep.delta;
  j["witness"] = {{"ball", rep.worst_ball}, {"subset", rep.worst_subset.members()}};
  return j;
}

json domination_to_json(const DominationProfile& prof) {
  json j;
  j["mode"] = prof.mode == DominationMode::weak ? "weak" : "strong";
  j["alphas"] = prof.alphas;
  json betas = json::array();
  for (double b : prof.beta) betas.push_back(std::isfinite(b) ? json(b) : json("inf"));
  j["beta"] = std::move(betas);
  j["witness_ball"] = prof.witness_ball;
  j["feasible"] = prof.feasible();
  return j;
}

json good_lambda_to_json(const GoodLambdaReport& rep) {
  json j;
  j["alpha"] = rep.alpha;
  j["beta"] = rep.beta;
  if (!std::isnan(rep.gamma)) j["gamma"] = rep.gamma;
  if (!std::isnan(rep.delta)) j["delta"] = rep.delta;
  j["lambdas"] = rep.lambdas;
  j["lhs"] = rep.lhs;
  j["rhs"] = rep.rhs;
  j["ratio"] = rep.ratio;
  j["max_ratio"] = rep.max_ratio;
  j["fitted_constant"] = rep.fitted_constant;
  j["inclusion_ok"] = rep.inclusion_ok;
  return j;
}

json exp_tail_to_json(const ExpTailReport& rep) {
  json j;
  j["t"] = rep.ts;
  j["tail"] = rep.tail;
  j["C"] = rep.C;
  j["c"] = rep.degenerate ? json("inf") : json(rep.c);
  j["r2"] = rep.r2;
  j["fit_points"] = rep.fit_points;
  j["certified"] = rep.certified;
  j["degenerate"] = rep.degenerate;
  if (!rep.certified && !rep.degenerate) {
    j["note"] = "decay observed but not exponential-certified";
  }
  return j;
}

json bo_report_to_json(const BoGoodLambdaReport& rep) {
  json j;
  j["eps"] = rep.eps;
  j["lambdas"] = rep.lambdas;
  j["ratio"] = rep.ratio;
  j["max_ratio"] = rep.max_ratio;
  std::vector<int> flagged;
  for (bool b : rep.eps_flagged) flagged.push_back(b ? 1 : 0);
  j["eps_flagged"] = flagged;
  j["eps_threshold"] = std::isfinite(rep.eps_threshold) ? json(rep.eps_threshold) : json("inf");
  j["c"] = rep.c;
  j["c_T"] = rep.c_T;
  j["r2"] = rep.r2;
  j["fit_points"] = rep.fit_points;
  j["certified"] = rep.certified;
  j["monotone"] = rep.monotone;
  return j;
}

json norm_comparison_to_json(const NormComparison& rep) {
  json j;
  j["p"] = rep.ps;
  json ratios = json::array();
  for (double r : rep.ratio) ratios.push_back(std::isfinite(r) ? json(r) : json("inf"));
  j["ratio"] = std::move(ratios);
  return j;
}

json tree_to_json(const CalderonTree& tree) {
  json j;
  j["root"] = tree.root;
  j["alpha"] = tree.alpha;
  json nodes;
  for (const auto& [id, node] : tree.nodes) {
    json jn;
    jn["good_set"] = node.good_set.members();
    jn["children"] = node.children;
    jn["osc_opt"] = node.osc_opt;
    jn["good_osc"] = node.good_osc;
    jn["child_sum"] = node.child_sum;
    jn["child_bound"] = node.child_bound;
    jn["a21_ok"] = node.a21_ok;
    jn["a17_ok"] = node.a17_ok;
    nodes[std::to_string(id)] = std::move(jn);
  }
  j["nodes"] = std::move(nodes);
  j["generations"] = tree.generations;
  j["delta_measure"] = tree.delta_measure;
  j["decay_constant"] = tree.decay_constant;
  j["all_a21"] = tree.all_a21;
  j["all_a17"] = tree.all_a17;
  return j;
}

std::string tree_decay_csv(const CalderonTree& tree) {
  std::vector<std::vector<std::string>> rows;
  for (size_t k = 0; k < tree.delta_measure.size(); ++k) {
    rows.push_back({std::to_string(k), format_double(tree.delta_measure[k]),
                    format_double(tree.decay_constant * std::pow(4.0, -static_cast<double>(k)))});
  }
  return csv_table({"generation", "residual_measure", "fitted_bound"}, rows);
}

}  // namespace ballbasis
