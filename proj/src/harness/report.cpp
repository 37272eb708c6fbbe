#include "llg/harness/report.hpp"

#include <fftw3.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "llg/core/error.hpp"
#include "llg/simd/kernels.hpp"

namespace llg::harness {

bool ExperimentReport::all_pass() const {
  for (const auto& c : criteria)
    if (!c.pass) return false;
  return true;
}

Criterion& ExperimentReport::check(std::string name, bool pass, double value, std::string detail) {
  criteria.push_back({std::move(name), pass, value, std::move(detail)});
  return criteria.back();
}

Curve& ExperimentReport::curve(const std::string& name, std::string x_label, std::string y_label) {
  for (auto& c : curves)
    if (c.name == name) return c;
  curves.push_back({name, std::move(x_label), std::move(y_label), {}, {}});
  return curves.back();
}

nlohmann::json environment_metadata() {
  nlohmann::json env;
#if defined(__clang__)
  env["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  env["compiler"] = std::string("gcc ") + __VERSION__;
#endif
  env["cxx_standard"] = static_cast<long>(__cplusplus);
  env["simd"] = simd::level_name(simd::active_level());
  env["fft"] = std::string(fftw_version);
  env["hardware_threads"] = std::thread::hardware_concurrency();
  return env;
}

void write_ndjson(const ExperimentReport& r, std::ostream& os) {
  os << nlohmann::json{{"type", "metadata"}, {"kind", r.kind}, {"metadata", r.metadata}}.dump() << '\n';
  for (const auto& c : r.criteria)
    os << nlohmann::json{{"type", "criterion"}, {"name", c.name}, {"pass", c.pass}, {"value", c.value},
                         {"detail", c.detail}}
              .dump()
       << '\n';
  for (const auto& c : r.curves)
    os << nlohmann::json{{"type", "curve"}, {"name", c.name}, {"x_label", c.x_label}, {"y_label", c.y_label},
                         {"x", c.x},       {"y", c.y}}
              .dump()
       << '\n';
  for (const auto& rec : r.records) os << rec.dump() << '\n';
  os << nlohmann::json{{"type", "summary"}, {"kind", r.kind}, {"all_pass", r.all_pass()}}.dump() << '\n';
}

void write_ndjson(const ExperimentReport& r, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write report " + path.string());
  write_ndjson(r, os);
}

std::vector<std::filesystem::path> emit_plotdata(const ExperimentReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> out;
  for (const auto& c : r.curves) {
    if (c.x.size() != c.y.size()) throw SizeMismatchError("curve '" + c.name + "' has unequal x/y lengths");
    const auto path = dir / (c.name + ".dat");
    std::ofstream os(path);
    if (!os) throw FormatError("cannot write " + path.string());
    os << "# curve " << c.name << '\n' << "# columns " << c.x_label << ' ' << c.y_label << '\n';
    char buf[80];
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g\n", c.x[i], c.y[i]);
      os << buf;
    }
    out.push_back(path);
  }
  return out;
}

Curve read_plotdata(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw FormatError("cannot open " + path.string());
  Curve c;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream h(line.substr(1));
      std::string tag;
      h >> tag;
      if (tag == "curve") h >> c.name;
      if (tag == "columns") h >> c.x_label >> c.y_label;
      continue;
    }
    const char* p = line.c_str();
    char* end = nullptr;
    const double x = std::strtod(p, &end);
    if (end == p) throw FormatError("malformed plot-data row in " + path.string());
    p = end;
    const double y = std::strtod(p, &end);
    if (end == p) throw FormatError("malformed plot-data row in " + path.string());
    c.x.push_back(x);
    c.y.push_back(y);
  }
  return c;
}

}  // namespace llg::harness
