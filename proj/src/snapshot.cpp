#include "gradflow/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "gradflow/errors.hpp"

namespace gradflow {

namespace {

constexpr std::array<char, 4> kMagic{'S', 'G', 'F', '1'};

template <typename T>
void put(std::string& buf, T value) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  buf.append(bytes.data(), bytes.size());
}

class Reader {
 public:
  explicit Reader(std::string bytes) : bytes_(std::move(bytes)) {}

  template <typename T>
  T get() {
    if (pos_ + sizeof(T) > bytes_.size()) throw SnapshotError("snapshot is truncated");
    std::array<char, sizeof(T)> raw;
    std::memcpy(raw.data(), bytes_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.end());
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, raw.data(), sizeof(T));
    return value;
  }

  bool at_end() const noexcept { return pos_ == bytes_.size(); }

 private:
  std::string bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

void write_snapshot(const FlowState& state, const std::string& path) {
  const auto& g = state.h.grid();
  std::string buf;
  buf.reserve(4 + 8 + 24 + 16 * state.h.size());
  buf.append(kMagic.data(), kMagic.size());
  put(buf, static_cast<std::uint32_t>(g.nx()));
  put(buf, static_cast<std::uint32_t>(g.ny()));
  put(buf, g.lx());
  put(buf, g.ly());
  put(buf, state.t);
  for (double v : state.h.values()) put(buf, v);
  for (double v : state.psi.values()) put(buf, v);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnapshotError("cannot open " + path + " for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw SnapshotError("failed writing " + path);
}

SnapshotData read_snapshot_data(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("cannot open " + path);
  Reader r(std::string(std::istreambuf_iterator<char>(in), {}));

  std::array<char, 4> magic{};
  for (auto& c : magic) c = r.get<char>();
  if (magic != kMagic) throw SnapshotError(path + ": bad magic");

  SnapshotData d;
  d.nx = r.get<std::uint32_t>();
  d.ny = r.get<std::uint32_t>();
  d.lx = r.get<double>();
  d.ly = r.get<double>();
  d.t = r.get<double>();
  if (d.nx == 0 || d.ny == 0 || d.nx > (1u << 15) || d.ny > (1u << 15))
    throw SnapshotError(path + ": implausible grid shape");
  const std::size_t n = static_cast<std::size_t>(d.nx) * d.ny;
  d.h.resize(n);
  d.psi.resize(n);
  for (auto& v : d.h) v = r.get<double>();
  for (auto& v : d.psi) v = r.get<double>();
  if (!r.at_end()) throw SnapshotError(path + ": trailing bytes after payload");
  return d;
}

FlowState read_snapshot(const std::string& path) {
  auto d = read_snapshot_data(path);
  GridPtr grid;
  try {
    grid = Grid::make(static_cast<int>(d.nx), static_cast<int>(d.ny), d.lx, d.ly);
  } catch (const std::invalid_argument& e) {
    throw SnapshotError(path + ": " + e.what());
  }
  return {d.t, ScalarField(grid, std::move(d.h)), ScalarField(grid, std::move(d.psi)), 0};
}

FlowState read_snapshot(const std::string& path, const GridPtr& grid) {
  auto d = read_snapshot_data(path);
  if (static_cast<int>(d.nx) != grid->nx() || static_cast<int>(d.ny) != grid->ny())
    throw SnapshotError(path + ": shape does not match the grid");
  return {d.t, ScalarField(grid, std::move(d.h)), ScalarField(grid, std::move(d.psi)), 0};
}

}  // namespace gradflow
