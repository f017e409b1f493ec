#include "almfast/report_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace almfast {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buffer, ptr);
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector vector_from_json(const json& arr) {
  Vector v(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    v[static_cast<Index>(i)] = arr[i].get<double>();
  return v;
}

json record_to_json(const IterationRecord& rec) {
  return json{{"k", rec.k},
              {"tau", rec.tau},
              {"mu", rec.mu},
              {"delta", rec.delta},
              {"inner_iters", rec.inner_iterations},
              {"inner_projs", rec.inner_projections},
              {"feas", rec.feasibility},
              {"obj", rec.objective},
              {"cum_projs", rec.cumulative_projections},
              {"stop_feasibility_ok", rec.stop_feasibility_ok},
              {"stop_count_ok", rec.stop_count_ok}};
}

IterationRecord record_from_json(const json& doc) {
  IterationRecord rec;
  rec.k = doc.at("k").get<long>();
  rec.tau = doc.at("tau").get<double>();
  rec.mu = doc.at("mu").get<double>();
  rec.delta = doc.at("delta").get<double>();
  rec.inner_iterations = doc.at("inner_iters").get<long>();
  rec.inner_projections = doc.at("inner_projs").get<long>();
  rec.feasibility = doc.at("feas").get<double>();
  rec.objective = doc.at("obj").get<double>();
  rec.cumulative_projections = doc.at("cum_projs").get<long>();
  rec.stop_feasibility_ok = doc.at("stop_feasibility_ok").get<bool>();
  rec.stop_count_ok = doc.at("stop_count_ok").get<bool>();
  return rec;
}

json init_to_json(const InitStats& init) {
  return json{{"inner_iters", init.inner_iterations},
              {"inner_projs", init.inner_projections},
              {"gap_solve_iters", init.gap_solve_iterations},
              {"gap_solve_projs", init.gap_solve_projections},
              {"feas", init.feasibility},
              {"obj", init.objective}};
}

InitStats init_from_json(const json& doc) {
  InitStats init;
  init.inner_iterations = doc.at("inner_iters").get<long>();
  init.inner_projections = doc.at("inner_projs").get<long>();
  init.gap_solve_iterations = doc.at("gap_solve_iters").get<long>();
  init.gap_solve_projections = doc.at("gap_solve_projs").get<long>();
  init.feasibility = doc.at("feas").get<double>();
  init.objective = doc.at("obj").get<double>();
  return init;
}

void append_record_csv(std::ostringstream& out, const IterationRecord& rec) {
  out << rec.k << ',' << format_double(rec.tau) << ',' << format_double(rec.mu)
      << ',' << format_double(rec.delta) << ',' << format_double(rec.feasibility)
      << ',' << format_double(rec.objective) << ',' << rec.inner_iterations
      << ',' << rec.inner_projections << ',' << rec.cumulative_projections
      << "\r\n";
}

}  // namespace

std::string solve_report_to_json(const SolveReport& report) {
  json doc;
  doc["algorithm"] = "ifal";
  doc["config"] = {{"rho", report.config.rho},
                   {"epsilon", report.config.epsilon},
                   {"mu0", report.config.effective_mu0()},
                   {"budget_mode", to_string(report.config.budget_mode)},
                   {"max_outer", report.config.effective_max_outer()},
                   {"cold_start", report.config.cold_start.has_value()}};
  doc["summary"] = {{"status", to_string(report.status)},
                    {"outer_iterations", report.outer_iterations},
                    {"total_projections", report.total_projections},
                    {"delta0_tilde", report.delta0_tilde},
                    {"wall_clock_seconds", report.wall_clock_seconds}};
  doc["init"] = init_to_json(report.init);
  doc["records"] = json::array();
  for (const IterationRecord& rec : report.records)
    doc["records"].push_back(record_to_json(rec));
  doc["final"] = {{"u", vector_to_json(report.u)}, {"x", vector_to_json(report.x)}};
  if (!report.iterates_u.empty()) {
    json iters_u = json::array();
    json iters_x = json::array();
    for (const Vector& u : report.iterates_u) iters_u.push_back(vector_to_json(u));
    for (const Vector& x : report.iterates_x) iters_x.push_back(vector_to_json(x));
    doc["iterates"] = {{"u", iters_u}, {"x", iters_x}};
  }
  return doc.dump(2);
}

SolveReport solve_report_from_json(const std::string& text) {
  const json doc = json::parse(text);
  if (doc.at("algorithm").get<std::string>() != "ifal")
    throw std::invalid_argument("report JSON: not a fixed-penalty report");
  SolveReport report;
  report.config.rho = doc.at("config").at("rho").get<double>();
  report.config.epsilon = doc.at("config").at("epsilon").get<double>();
  report.config.mu0 = doc.at("config").at("mu0").get<double>();
  report.config.budget_mode =
      budget_mode_from_string(doc.at("config").at("budget_mode").get<std::string>());
  report.config.max_outer = doc.at("config").at("max_outer").get<long>();
  if (doc.at("config").at("cold_start").get<bool>()) {
    // Placeholder marker; the starting pair itself lives in iterates[0].
    report.config.cold_start = ColdStart{};
  }

  const json& summary = doc.at("summary");
  const std::string status = summary.at("status").get<std::string>();
  report.status = status == "converged" ? SolveStatus::converged
                  : status == "max-outer" ? SolveStatus::max_outer
                                          : SolveStatus::inner_failure;
  report.outer_iterations = summary.at("outer_iterations").get<long>();
  report.total_projections = summary.at("total_projections").get<long>();
  report.delta0_tilde = summary.at("delta0_tilde").get<double>();
  report.wall_clock_seconds = summary.at("wall_clock_seconds").get<double>();
  report.init = init_from_json(doc.at("init"));
  for (const json& rec : doc.at("records"))
    report.records.push_back(record_from_json(rec));
  report.u = vector_from_json(doc.at("final").at("u"));
  report.x = vector_from_json(doc.at("final").at("x"));
  if (doc.contains("iterates")) {
    for (const json& u : doc.at("iterates").at("u"))
      report.iterates_u.push_back(vector_from_json(u));
    for (const json& x : doc.at("iterates").at("x"))
      report.iterates_x.push_back(vector_from_json(x));
    if (report.config.cold_start && !report.iterates_u.empty())
      report.config.cold_start =
          ColdStart{report.iterates_u.front(), report.iterates_x.front()};
  }
  return report;
}

std::string solve_report_to_csv(const SolveReport& report) {
  std::ostringstream out;
  out << "k,tau,mu,delta,feas,obj,inner_iters,inner_projs,cum_projs\r\n";
  for (const IterationRecord& rec : report.records) append_record_csv(out, rec);
  return out.str();
}

std::string adaptive_report_to_json(const AdaptiveReport& report) {
  json doc;
  doc["algorithm"] = "aifal";
  doc["config"] = {{"rho0", report.rho0},
                   {"epsilon", report.epsilon},
                   {"budget_mode", to_string(report.budget_mode)}};
  doc["summary"] = {{"status", to_string(report.status)},
                    {"stages", report.stages.size()},
                    {"total_projections", report.total_projections},
                    {"wall_clock_seconds", report.wall_clock_seconds}};
  doc["stages"] = json::array();
  for (const AdaptiveStage& stage : report.stages) {
    json entry;
    entry["rho"] = stage.rho;
    entry["init"] = init_to_json(stage.init);
    entry["record"] = record_to_json(stage.record);
    entry["carried_x"] = vector_to_json(stage.carried_x);
    entry["u"] = vector_to_json(stage.u);
    entry["x"] = vector_to_json(stage.x);
    doc["stages"].push_back(entry);
  }
  doc["final"] = {{"u", vector_to_json(report.u)}, {"x", vector_to_json(report.x)}};
  return doc.dump(2);
}

AdaptiveReport adaptive_report_from_json(const std::string& text) {
  const json doc = json::parse(text);
  if (doc.at("algorithm").get<std::string>() != "aifal")
    throw std::invalid_argument("report JSON: not an adaptive report");
  AdaptiveReport report;
  report.rho0 = doc.at("config").at("rho0").get<double>();
  report.epsilon = doc.at("config").at("epsilon").get<double>();
  report.budget_mode =
      budget_mode_from_string(doc.at("config").at("budget_mode").get<std::string>());
  const std::string status = doc.at("summary").at("status").get<std::string>();
  report.status = status == "converged" ? AdaptiveStatus::converged
                  : status == "max-stages" ? AdaptiveStatus::max_stages
                                           : AdaptiveStatus::inner_failure;
  report.total_projections =
      doc.at("summary").at("total_projections").get<long>();
  report.wall_clock_seconds =
      doc.at("summary").at("wall_clock_seconds").get<double>();
  for (const json& entry : doc.at("stages")) {
    AdaptiveStage stage;
    stage.rho = entry.at("rho").get<double>();
    stage.init = init_from_json(entry.at("init"));
    stage.record = record_from_json(entry.at("record"));
    stage.carried_x = vector_from_json(entry.at("carried_x"));
    stage.u = vector_from_json(entry.at("u"));
    stage.x = vector_from_json(entry.at("x"));
    report.stages.push_back(std::move(stage));
  }
  report.u = vector_from_json(doc.at("final").at("u"));
  report.x = vector_from_json(doc.at("final").at("x"));
  return report;
}

std::string adaptive_report_to_csv(const AdaptiveReport& report) {
  std::ostringstream out;
  out << "rho,k,tau,mu,delta,feas,obj,inner_iters,inner_projs,cum_projs\r\n";
  for (const AdaptiveStage& stage : report.stages) {
    out << format_double(stage.rho) << ',';
    append_record_csv(out, stage.record);
  }
  return out.str();
}

std::string report_algorithm(const std::string& text) {
  return json::parse(text).at("algorithm").get<std::string>();
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw std::runtime_error("cannot open " + path + " for writing");
  stream << text;
}

std::string load_text(const std::string& path) {
  std::ifstream stream(path, std::ios::binary);
  if (!stream) throw std::runtime_error("cannot open " + path);
  return std::string((std::istreambuf_iterator<char>(stream)),
                     std::istreambuf_iterator<char>());
}

}  // namespace almfast
