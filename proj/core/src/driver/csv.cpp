#include "cvqkd/driver/csv.hpp"

#include <cstdio>
#include <sstream>

namespace cvqkd::driver {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string csv_header(bool with_timings) {
  std::string header =
      "distance_km,loss_db_per_km,eta,xi,eta_d,nu_el,n_states,delta_r,"
      "n_bobs,m_trusted,scenario,engine,n_c,n_f,beta_rec,"
      "alpha,alpha_at_boundary,rate,rate_clamped,mi_ab,holevo,mi_bb_max,"
      "f_step1,f_step2,gap,weight,delta,ec_leak,classical_floor,iterations,"
      "status,schema";
  if (with_timings) header += ",wall_ms";
  return header;
}

std::string csv_row(const ResultRow& r, bool with_timings) {
  std::ostringstream out;
  out << fmt(r.distance_km) << ',' << fmt(r.loss_db_per_km) << ','
      << fmt(r.eta) << ',' << fmt(r.xi) << ',' << fmt(r.eta_d) << ','
      << fmt(r.nu_el) << ',' << r.n_states << ',' << fmt(r.delta_r) << ','
      << r.n_bobs << ',' << r.m_trusted << ',' << quoted(r.scenario) << ','
      << quoted(r.engine) << ',' << r.n_c << ',' << r.n_f << ','
      << fmt(r.beta_rec) << ',' << fmt(r.alpha) << ','
      << (r.alpha_at_boundary ? 1 : 0) << ',' << fmt(r.rate) << ','
      << fmt(r.rate_clamped) << ',' << fmt(r.mi_ab) << ',' << fmt(r.holevo)
      << ',' << fmt(r.mi_bb_max) << ',' << fmt(r.f_step1) << ','
      << fmt(r.f_step2) << ',' << fmt(r.gap) << ',' << fmt(r.weight) << ','
      << fmt(r.delta) << ',' << fmt(r.ec_leak) << ','
      << fmt(r.classical_floor) << ',' << r.iterations << ','
      << quoted(r.status) << ',' << kCsvSchema;
  if (with_timings) out << ',' << fmt(r.wall_ms);
  return out.str();
}

std::string csv_string(const std::vector<ResultRow>& rows, bool with_timings) {
  std::string out = csv_header(with_timings) + "\n";
  for (const auto& row : rows) out += csv_row(row, with_timings) + "\n";
  return out;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows,
               bool with_timings) {
  out << csv_string(rows, with_timings);
}

}  // namespace cvqkd::driver
