#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "llg/core/snapshot.hpp"
#include "llg/evolve/evolve.hpp"

namespace llg::evolve {
namespace {

void check_lambda(const Grid& g, int lambda) {
  if (lambda < 1) throw ConfigError("scaling factor must be a positive integer");
  for (int j = 0; j < g.dim(); ++j)
    if (g.size(j) % lambda != 0) throw ConfigError("scaling factor must divide every axis size");
}

std::string snapshot_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06zu.llgf", i);
  return buf;
}

nlohmann::json manifest(const RunMetadata& meta, const Grid& g, const std::vector<double>& times, bool sphere) {
  nlohmann::json m;
  m["times"] = times;
  m["params"] = {{"a", meta.params.a}, {"epsilon", meta.params.epsilon}};
  m["dt"] = meta.dt;
  m["integrator"] = meta.integrator;
  m["datum"] = meta.datum;
  m["grid"] = {{"dim", g.dim()},
               {"sizes", std::vector<int>(g.sizes().begin(), g.sizes().begin() + g.dim())},
               {"lengths", std::vector<double>(g.lengths().begin(), g.lengths().begin() + g.dim())}};
  m["kind"] = sphere ? "sphere" : "complex";
  std::vector<std::string> files;
  for (std::size_t i = 0; i < times.size(); ++i) files.push_back(snapshot_name(i));
  m["files"] = files;
  return m;
}

void write_manifest(const std::filesystem::path& dir, const nlohmann::json& m) {
  std::ofstream os(dir / "manifest.json");
  if (!os) throw FormatError("cannot write manifest in " + dir.string());
  os << m.dump(2) << '\n';
}

nlohmann::json read_manifest(const std::filesystem::path& dir, RunMetadata& meta) {
  std::ifstream is(dir / "manifest.json");
  if (!is) throw FormatError("missing manifest.json in " + dir.string());
  try {
    const auto m = nlohmann::json::parse(is);
    meta.params.a = m.at("params").at("a").get<double>();
    meta.params.epsilon = m.at("params").at("epsilon").get<double>();
    meta.dt = m.at("dt").get<double>();
    meta.integrator = m.at("integrator").get<std::string>();
    meta.datum = m.at("datum").get<std::string>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed manifest: ") + e.what());
  }
}

}  // namespace

ComplexField dilate(const ComplexField& u, int lambda) {
  const Grid& g = u.grid();
  check_lambda(g, lambda);
  ComplexField v(g);
  std::size_t p = 0;
  for (int i0 = 0; i0 < g.size(0); ++i0)
    for (int i1 = 0; i1 < g.size(1); ++i1)
      for (int i2 = 0; i2 < g.size(2); ++i2, ++p) {
        const int j0 = g.dim() > 0 ? (lambda * i0) % g.size(0) : i0;
        const int j1 = g.dim() > 1 ? (lambda * i1) % g.size(1) : i1;
        const int j2 = g.dim() > 2 ? (lambda * i2) % g.size(2) : i2;
        v[p] = u[g.flatten(j0, j1, j2)];
      }
  return v;
}

Trajectory scaling_transform(const Trajectory& traj, int lambda) {
  if (traj.empty()) throw DomainError("empty trajectory");
  check_lambda(traj.grid(), lambda);
  const double l2 = static_cast<double>(lambda) * lambda;
  Trajectory out;
  out.meta = traj.meta;
  out.meta.dt = traj.meta.dt / l2;
  for (std::size_t i = 0; i < traj.size(); ++i) out.push_back(traj.times[i] / l2, dilate(traj.snapshots[i], lambda));
  return out;
}

double discrete_residual(const Trajectory& traj, const LlgParams& params) {
  if (traj.size() < 5) throw DomainError("residual needs at least five samples");
  const double h = traj.sample_interval();
  double worst = 0.0;
  for (std::size_t i = 2; i + 2 < traj.size(); ++i) {
    const ComplexField rhs = dgl::dgl_rhs(traj.snapshots[i], params);
    for (std::size_t p = 0; p < rhs.size(); ++p) {
      const cplx dt = (-traj.snapshots[i + 2][p] + 8.0 * traj.snapshots[i + 1][p] - 8.0 * traj.snapshots[i - 1][p] +
                       traj.snapshots[i - 2][p]) /
                      (12.0 * h);
      worst = std::max(worst, std::abs(dt - rhs[p]));
    }
  }
  return worst;
}

void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj) {
  if (traj.empty()) throw DomainError("empty trajectory");
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < traj.size(); ++i)
    write_snapshot(dir / snapshot_name(i), traj.snapshots[i], traj.times[i], traj.meta.params);
  write_manifest(dir, manifest(traj.meta, traj.grid(), traj.times, false));
}

void write_trajectory(const std::filesystem::path& dir, const sphere::SphereTrajectory& traj) {
  if (traj.empty()) throw DomainError("empty trajectory");
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < traj.size(); ++i)
    write_snapshot(dir / snapshot_name(i), std::span<const RealField>(traj.snapshots[i].s), traj.times[i],
                   traj.meta.params);
  auto m = manifest(traj.meta, traj.grid(), traj.times, true);
  const auto& q = traj.snapshots.front().base_point;
  m["base_point"] = {q[0], q[1], q[2]};
  write_manifest(dir, m);
}

Trajectory read_trajectory(const std::filesystem::path& dir) {
  Trajectory traj;
  const auto m = read_manifest(dir, traj.meta);
  if (m.value("kind", "complex") != "complex") throw FormatError("not a complex-field trajectory");
  const auto times = m.at("times").get<std::vector<double>>();
  const auto files = m.at("files").get<std::vector<std::string>>();
  if (times.size() != files.size()) throw FormatError("manifest times/files length mismatch");
  for (std::size_t i = 0; i < files.size(); ++i) traj.push_back(times[i], read_snapshot(dir / files[i]).as_complex());
  return traj;
}

sphere::SphereTrajectory read_sphere_trajectory(const std::filesystem::path& dir) {
  sphere::SphereTrajectory traj;
  const auto m = read_manifest(dir, traj.meta);
  if (m.value("kind", "") != "sphere") throw FormatError("not a sphere-field trajectory");
  const auto times = m.at("times").get<std::vector<double>>();
  const auto files = m.at("files").get<std::vector<std::string>>();
  const auto q = m.at("base_point").get<std::vector<double>>();
  if (times.size() != files.size() || q.size() != 3) throw FormatError("malformed sphere manifest");
  for (std::size_t i = 0; i < files.size(); ++i) {
    const Snapshot snap = read_snapshot(dir / files[i]);
    if (snap.header.components != 3) throw FormatError("sphere snapshot needs three components");
    traj.push_back(times[i], sphere::SphereField{{snap.component(0), snap.component(1), snap.component(2)},
                                                 {q[0], q[1], q[2]}});
  }
  return traj;
}

}  // namespace llg::evolve
