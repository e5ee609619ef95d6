#pragma once

#include <iosfwd>

#include "mcbf/types.hpp"

namespace mcbf {

/// JSON instance schema:
/// {N, M, sigma2: [...], power: {"type":"sum","P":x} | {"type":"per","P":[...]},
///  H: [[[re,im],...],...]}
std::string instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const std::string& text);

void save_instance(const ProblemInstance& inst, const std::string& path);
ProblemInstance load_instance(const std::string& path);

/// One CSV row of the batch report schema. Column order is fixed:
/// trial,N,M,K,solver,lambda_final,t_repeat,min_snr_db,wall_ms,sca_iters,converged
struct CsvRow {
  int trial = 0;
  int n = 0;
  int m = 0;
  int k = 0;
  std::string solver;
  double lambda_final = 0.0;
  int t_repeat = 0;
  double min_snr_db = 0.0;
  double wall_ms = 0.0;
  int sca_iters = 0;
  bool converged = true;
};

extern const char* const kCsvHeader;
std::string csv_row_to_string(const CsvRow& row);
void write_csv(const std::vector<CsvRow>& rows, std::ostream& os);
void write_csv_file(const std::vector<CsvRow>& rows, const std::string& path);

}  // namespace mcbf
