#include "fppweb/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fppweb {

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string path_csv(const Path& p) {
  std::string s = "start_time,dt\n" + format_number(p.start_time) + "," + format_number(p.dt) +
                  "\nvalue\n";
  for (const double v : p.values) s += format_number(v) + "\n";
  return s;
}

Path parse_path_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.size() < 4 || lines[0] != "start_time,dt" || lines[2] != "value")
    throw std::invalid_argument("path csv: bad header");
  const auto head = split(lines[1]);
  if (head.size() != 2) throw std::invalid_argument("path csv: bad start_time,dt row");
  std::vector<double> values;
  for (std::size_t i = 3; i < lines.size(); ++i) values.push_back(parse_number(lines[i]));
  return Path(parse_number(head[0]), parse_number(head[1]), std::move(values));
}

std::string frontier_csv(const DistanceFrontier& f) {
  std::string s = "t,position,distance\n";
  for (std::int64_t t = f.source().t; t <= f.horizon(); ++t)
    for (const auto& [x, d] : f.slice(t))
      s += std::to_string(t) + "," + std::to_string(x) + "," + std::to_string(d) + "\n";
  return s;
}

std::string bundle_csv(const ReflectionBundle& b) {
  const auto& lb = b.lattice;
  const auto n = static_cast<double>(b.n);
  const double scale = std::sqrt(n);
  auto cell = [&](const std::vector<std::int64_t>& v, std::int64_t offset) {
    return offset < 0 ? std::string() : format_number(static_cast<double>(v[static_cast<std::size_t>(offset)]) / scale);
  };
  std::string s = "t,G,S,R,Rext,I,E,base_walk\n";
  for (std::int64_t t = lb.t0; t <= lb.t_end(); ++t) {
    const std::int64_t i = t - lb.t0;
    const std::int64_t j = t - lb.tk;
    s += format_number(static_cast<double>(t) / n) + "," + cell(lb.G, i) + "," + cell(lb.S, j) +
         "," + cell(lb.R, j) + "," + cell(lb.Rext, i) + "," + cell(lb.I, j) + "," +
         cell(lb.E, i) + "," + cell(lb.base, j) + "\n";
  }
  return s;
}

std::string distance_sample_csv(const DistanceSample& ds) {
  std::string s = "u1,u2,v1,v2,value\n";
  for (const auto& e : ds.points)
    s += format_number(e.u[0]) + "," + format_number(e.u[1]) + "," + format_number(e.v[0]) + "," +
         format_number(e.v[1]) + "," + (e.value ? std::to_string(*e.value) : "inf") + "\n";
  return s;
}

DistanceSample parse_distance_sample_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "u1,u2,v1,v2,value")
    throw std::invalid_argument("distance csv: bad header");
  DistanceSample ds;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto c = split(lines[i]);
    if (c.size() != 5) throw std::invalid_argument("distance csv: row " + std::to_string(i + 1));
    DistanceEntry e{{parse_number(c[0]), parse_number(c[1])},
                    {parse_number(c[2]), parse_number(c[3])},
                    std::nullopt};
    if (c[4] != "inf") e.value = std::stoi(c[4]);
    ds.points.push_back(e);
  }
  ds.validate();
  return ds;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string s = "n,journey_endpoint,epigraph\n";
  for (const auto& r : rows)
    s += std::to_string(r.n) + "," + format_number(r.journey_endpoint) + "," +
         format_number(r.epigraph) + "\n";
  return s;
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

std::string read_text(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fppweb
