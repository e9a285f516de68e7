#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ballbasis/basis.hpp"
#include "ballbasis/covering.hpp"
#include "ballbasis/space.hpp"
#include "ballbasis/verify.hpp"
#include "ballbasis/weights.hpp"

namespace ballbasis {

using json = nlohmann::json;

/// Shortest round-trip decimal form, locale-independent.
std::string format_double(double v);

/// RFC-4180 style CSV: header row, CRLF line endings, '.' decimal point.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

struct SpaceBundle {
  std::vector<double> coords;
  std::vector<double> mu;
  std::optional<std::vector<double>> value;  // function column
  std::optional<std::vector<double>> w;      // weight column
};

/// Columns: index, coord, mu[, value][, w].
std::string space_to_csv(const SpaceBundle& bundle);
SpaceBundle space_from_csv(const std::string& content);

json basis_to_json(const BallBasis& basis);
BallBasis basis_from_json(const json& j);

json axiom_report_to_json(const AxiomReport& rep);
json ainfty_report_to_json(const AinftyReport& rep);
json domination_to_json(const DominationProfile& prof);
json good_lambda_to_json(const GoodLambdaReport& rep);
json exp_tail_to_json(const ExpTailReport& rep);
json bo_report_to_json(const BoGoodLambdaReport& rep);
json norm_comparison_to_json(const NormComparison& rep);
json tree_to_json(const CalderonTree& tree);

std::string tree_decay_csv(const CalderonTree& tree);

}  // namespace ballbasis
