#include "fiotk/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "fiotk/error.hpp"

namespace fiotk {
namespace {

static_assert(std::endian::native == std::endian::little,
              "field files are written with native little-endian layout");

constexpr char kMagic[4] = {'F', 'I', 'O', 'F'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::ifstream& in, const std::string& path) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) fail(ErrorKind::Io, "truncated field file " + path);
  return value;
}

}  // namespace

void write_field(const std::string& path, const GridField& field) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot open " + path + " for writing");
  const GridSpec& spec = field.spec();
  out.write(kMagic, 4);
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(spec.dim));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(spec.size));
  put<double>(out, spec.period);
  out.write(reinterpret_cast<const char*>(field.data().data()),
            static_cast<std::streamsize>(field.size() * sizeof(cplx)));
  if (!out) fail(ErrorKind::Io, "write failed for " + path);
}

GridField read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) fail(ErrorKind::Io, "bad magic in " + path);
  auto version = get<std::uint32_t>(in, path);
  if (version != kVersion) fail(ErrorKind::Io, "unsupported field version in " + path);
  GridSpec spec;
  spec.dim = static_cast<int>(get<std::uint32_t>(in, path));
  spec.size = static_cast<int>(get<std::uint32_t>(in, path));
  spec.period = get<double>(in, path);
  try {
    spec.validate();
  } catch (const Error& e) {
    fail(ErrorKind::Io, path + ": " + e.what());
  }
  std::vector<cplx> values(spec.count());
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(cplx)));
  if (!in) fail(ErrorKind::Io, "truncated field payload in " + path);
  GridField field(spec, std::move(values));
  if (!field.all_finite()) fail(ErrorKind::InvalidInput, "non-finite samples in " + path);
  return field;
}

}  // namespace fiotk
