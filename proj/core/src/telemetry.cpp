#include "amctl/telemetry.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "amctl/error.hpp"

namespace amctl {

namespace {

void put(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  out << buf;
}

std::vector<double> flatten(const TelemetryRow& r) {
  std::vector<double> v;
  v.reserve(29);
  v.push_back(r.t);
  for (const Vec3* x : {&r.p, &r.v, &r.ypr}) v.insert(v.end(), x->data(), x->data() + 3);
  v.insert(v.end(), r.q.data(), r.q.data() + 3);
  for (const Vec3* x : {&r.ee, &r.f_low, &r.f_high, &r.f_ext}) {
    v.insert(v.end(), x->data(), x->data() + 3);
  }
  v.push_back(r.t_spec);
  v.insert(v.end(), r.omega_d.data(), r.omega_d.data() + 3);
  return v;
}

}  // namespace

const std::vector<std::string>& telemetry_columns() {
  static const std::vector<std::string> cols = {
      "t",        "px",       "py",       "pz",       "vx",      "vy",
      "vz",       "yaw",      "pitch",    "roll",     "q1",      "q2",
      "q3",       "ee_x",     "ee_y",     "ee_z",     "f_low_x", "f_low_y",
      "f_low_z",  "f_high_x", "f_high_y", "f_high_z", "f_ext_x", "f_ext_y",
      "f_ext_z",  "T_spec",   "wd_x",     "wd_y",     "wd_z"};
  return cols;
}

void write_telemetry_header(std::ostream& out) {
  const auto& cols = telemetry_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
}

void write_telemetry_row(std::ostream& out, const TelemetryRow& row) {
  const auto v = flatten(row);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    put(out, v[i]);
  }
  out << '\n';
}

void write_telemetry_csv(std::ostream& out, const std::vector<TelemetryRow>& rows) {
  write_telemetry_header(out);
  for (const auto& r : rows) write_telemetry_row(out, r);
}

std::vector<TelemetryRow> read_telemetry_csv(std::istream& in) {
  const auto bad = [](const std::string& msg) { throw Error(ErrorCode::kConfig, msg); };
  std::string line;
  if (!std::getline(in, line)) bad("telemetry: empty file");
  {
    std::ostringstream expected;
    write_telemetry_header(expected);
    std::string want = expected.str();
    want.pop_back();
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != want) bad("telemetry: unexpected header");
  }

  std::vector<TelemetryRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    double v[29];
    std::size_t n = 0;
    std::size_t pos = 0;
    while (pos <= line.size() && n < 29) {
      std::size_t end = line.find(',', pos);
      if (end == std::string::npos) end = line.size();
      std::string cell = line.substr(pos, end - pos);
      if (!cell.empty() && cell.back() == '\r') cell.pop_back();
      try {
        std::size_t used = 0;
        v[n] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        bad("telemetry: bad number on line " + std::to_string(line_no));
      }
      ++n;
      pos = end + 1;
    }
    if (n != 29 || pos <= line.size()) {
      bad("telemetry: expected 29 columns on line " + std::to_string(line_no));
    }
    TelemetryRow r;
    r.t = v[0];
    r.p = Vec3(v[1], v[2], v[3]);
    r.v = Vec3(v[4], v[5], v[6]);
    r.ypr = Vec3(v[7], v[8], v[9]);
    r.q = JointVec(v[10], v[11], v[12]);
    r.ee = Vec3(v[13], v[14], v[15]);
    r.f_low = Vec3(v[16], v[17], v[18]);
    r.f_high = Vec3(v[19], v[20], v[21]);
    r.f_ext = Vec3(v[22], v[23], v[24]);
    r.t_spec = v[25];
    r.omega_d = Vec3(v[26], v[27], v[28]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace amctl
