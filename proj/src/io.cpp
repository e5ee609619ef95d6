#include "mcbf/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mcbf {

using nlohmann::json;

std::string instance_to_json(const ProblemInstance& inst) {
  json j;
  j["N"] = inst.N;
  j["M"] = inst.M;
  j["sigma2"] = std::vector<double>(inst.noise_vars.data(),
                                    inst.noise_vars.data() + inst.noise_vars.size());
  if (inst.power.kind == PowerConstraint::Kind::SumPower) {
    j["power"] = {{"type", "sum"}, {"P", inst.power.total}};
  } else {
    j["power"] = {{"type", "per"},
                  {"P", std::vector<double>(inst.power.per.data(),
                                            inst.power.per.data() + inst.power.per.size())}};
  }
  json channels = json::array();
  for (const auto& h : inst.channels) {
    json row = json::array();
    for (int i = 0; i < h.size(); ++i) row.push_back({h[i].real(), h[i].imag()});
    channels.push_back(std::move(row));
  }
  j["H"] = std::move(channels);
  return j.dump(2);
}

ProblemInstance instance_from_json(const std::string& text) {
  const json j = json::parse(text);
  ProblemInstance inst;
  inst.N = j.at("N").get<int>();
  inst.M = j.at("M").get<int>();
  const auto sigma2 = j.at("sigma2").get<std::vector<double>>();
  inst.noise_vars = Eigen::Map<const Vec>(sigma2.data(), sigma2.size());
  const json& p = j.at("power");
  const std::string type = p.at("type").get<std::string>();
  if (type == "sum") {
    inst.power = PowerConstraint::sum(p.at("P").get<double>());
  } else if (type == "per") {
    const auto per = p.at("P").get<std::vector<double>>();
    inst.power = PowerConstraint::per_antenna(Eigen::Map<const Vec>(per.data(), per.size()));
  } else {
    throw InvalidInstance("unknown power constraint type: " + type);
  }
  for (const json& row : j.at("H")) {
    CVec h(row.size());
    int i = 0;
    for (const json& entry : row) {
      h[i++] = {entry.at(0).get<double>(), entry.at(1).get<double>()};
    }
    inst.channels.push_back(std::move(h));
  }
  inst.validate();
  return inst;
}

void save_instance(const ProblemInstance& inst, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw InvalidInstance("cannot open for write: " + path);
  os << instance_to_json(inst) << "\n";
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidInstance("cannot open: " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return instance_from_json(buf.str());
}

const char* const kCsvHeader =
    "trial,N,M,K,solver,lambda_final,t_repeat,min_snr_db,wall_ms,sca_iters,converged";

std::string csv_row_to_string(const CsvRow& row) {
  std::ostringstream os;
  os.precision(10);
  os << row.trial << ',' << row.n << ',' << row.m << ',' << row.k << ',' << row.solver
     << ',' << row.lambda_final << ',' << row.t_repeat << ',' << row.min_snr_db << ','
     << row.wall_ms << ',' << row.sca_iters << ',' << (row.converged ? "true" : "false");
  return os.str();
}

void write_csv(const std::vector<CsvRow>& rows, std::ostream& os) {
  os << kCsvHeader << '\n';
  for (const auto& row : rows) os << csv_row_to_string(row) << '\n';
}

void write_csv_file(const std::vector<CsvRow>& rows, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw InvalidInstance("cannot open for write: " + path);
  write_csv(rows, os);
}

}  // namespace mcbf
