#include "llg/core/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace llg {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void write_le(std::ostream& os, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T read_le(std::istream& is) {
  unsigned char bytes[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw FormatError("snapshot truncated");
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

void write_header(std::ostream& os, const Grid& g, const char* dtype, double time,
                  const LlgParams& params, int components) {
  nlohmann::json h;
  h["dim"] = g.dim();
  h["sizes"] = std::vector<int>(g.sizes().begin(), g.sizes().begin() + g.dim());
  h["lengths"] = std::vector<double>(g.lengths().begin(), g.lengths().begin() + g.dim());
  h["dtype"] = dtype;
  h["time"] = time;
  h["epsilon"] = params.epsilon;
  h["a"] = params.a;
  h["components"] = components;
  const std::string text = h.dump();
  os.write(kSnapshotMagic.data(), kSnapshotMagic.size());
  write_le<std::uint64_t>(os, text.size());
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open snapshot for writing: " + path.string());
  return os;
}

}  // namespace

void write_snapshot(std::ostream& os, const ComplexField& f, double time, const LlgParams& params) {
  write_header(os, f.grid(), "c128", time, params, 1);
  for (const cplx& v : f.values()) {
    write_le(os, v.real());
    write_le(os, v.imag());
  }
  if (!os) throw FormatError("snapshot write failed");
}

void write_snapshot(std::ostream& os, std::span<const RealField> components, double time,
                    const LlgParams& params) {
  if (components.empty()) throw FormatError("snapshot needs at least one component");
  for (const auto& c : components) c.check_same(components.front());
  write_header(os, components.front().grid(), "f64", time, params,
               static_cast<int>(components.size()));
  for (const auto& c : components)
    for (double v : c.values()) write_le(os, v);
  if (!os) throw FormatError("snapshot write failed");
}

Snapshot read_snapshot(std::istream& is) {
  std::array<char, 16> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kSnapshotMagic)
    throw FormatError("bad snapshot magic");
  const auto len = read_le<std::uint64_t>(is);
  if (len > (1u << 24)) throw FormatError("snapshot header too long");
  std::string text(len, '\0');
  if (!is.read(text.data(), static_cast<std::streamsize>(len))) throw FormatError("snapshot truncated");

  Snapshot snap;
  try {
    const auto h = nlohmann::json::parse(text);
    const int dim = h.at("dim").get<int>();
    const auto sizes = h.at("sizes").get<std::vector<int>>();
    const auto lengths = h.at("lengths").get<std::vector<double>>();
    if (dim < 1 || dim > 3 || sizes.size() != static_cast<std::size_t>(dim) ||
        lengths.size() != sizes.size())
      throw FormatError("inconsistent snapshot grid");
    std::array<int, 3> s{1, 1, 1};
    std::array<double, 3> l{1, 1, 1};
    for (int j = 0; j < dim; ++j) {
      s[j] = sizes[j];
      l[j] = lengths[j];
    }
    snap.header.grid = Grid(dim, s, l);
    snap.header.dtype = h.at("dtype").get<std::string>();
    snap.header.time = h.at("time").get<double>();
    snap.header.params.epsilon = h.at("epsilon").get<double>();
    snap.header.params.a = h.at("a").get<double>();
    snap.header.components = h.value("components", 1);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad snapshot header: ") + e.what());
  }

  const auto& hd = snap.header;
  std::size_t count = hd.grid.point_count() * static_cast<std::size_t>(hd.components);
  if (hd.dtype == "c128")
    count *= 2;
  else if (hd.dtype != "f64")
    throw FormatError("unknown snapshot dtype: " + hd.dtype);
  snap.raw.resize(count);
  for (auto& v : snap.raw) v = read_le<double>(is);
  return snap;
}

void write_snapshot(const std::filesystem::path& path, const ComplexField& f, double time,
                    const LlgParams& params) {
  auto os = open_out(path);
  write_snapshot(os, f, time, params);
}

void write_snapshot(const std::filesystem::path& path, std::span<const RealField> components,
                    double time, const LlgParams& params) {
  auto os = open_out(path);
  write_snapshot(os, components, time, params);
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open snapshot: " + path.string());
  return read_snapshot(is);
}

ComplexField Snapshot::as_complex() const {
  if (header.dtype != "c128" || header.components != 1)
    throw FormatError("snapshot does not hold a complex scalar field");
  ComplexField f(header.grid);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = cplx(raw[2 * i], raw[2 * i + 1]);
  return f;
}

RealField Snapshot::component(int c) const {
  if (header.dtype != "f64" || c < 0 || c >= header.components)
    throw FormatError("snapshot component not available");
  RealField f(header.grid);
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) f[i] = raw[c * n + i];
  return f;
}

}  // namespace llg
