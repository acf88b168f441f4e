#include "propertime/serialize.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "propertime/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "fixture layout assumes a little-endian host");

namespace propertime::io {
namespace {

constexpr char kMagic[6] = {'P', 'T', 'F', 'K', '1', '\n'};

using ordered_json = nlohmann::ordered_json;

void write_payload(std::ofstream& out, const fock::Matrix& m) {
  // Eigen stores column-major complex<double> as adjacent (re, im) doubles,
  // which is exactly the payload layout.
  out.write(reinterpret_cast<const char*>(m.data()),
            static_cast<std::streamsize>(sizeof(fock::complexd) * m.size()));
}

void save_blob(const std::string& path, const ordered_json& header,
               const fock::Matrix& payload) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  const std::string head = header.dump();
  const std::uint64_t head_len = head.size();
  out.write(kMagic, sizeof(kMagic));
  out.write(reinterpret_cast<const char*>(&head_len), sizeof(head_len));
  out.write(head.data(), static_cast<std::streamsize>(head.size()));
  write_payload(out, payload);
  if (!out) throw IoError("short write to '" + path + "'");
}

struct Blob {
  ordered_json header;
  fock::Matrix payload;  // dim × cols
};

Blob load_blob(const std::string& path, const std::string& want_type) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (!in || !std::equal(magic, magic + sizeof(magic), kMagic)) {
    throw IoError("'" + path + "' is not a fixture file (bad magic)");
  }
  std::uint64_t head_len = 0;
  in.read(reinterpret_cast<char*>(&head_len), sizeof(head_len));
  if (!in || head_len > (1u << 20)) {
    throw IoError("'" + path + "': corrupt header length");
  }
  std::string head(head_len, '\0');
  in.read(head.data(), static_cast<std::streamsize>(head_len));
  if (!in) throw IoError("'" + path + "': truncated header");

  Blob blob;
  try {
    blob.header = ordered_json::parse(head);
  } catch (const std::exception& e) {
    throw IoError("'" + path + "': bad header JSON: " + e.what());
  }
  if (!blob.header.contains("type") || !blob.header.contains("dim") ||
      !blob.header["dim"].is_number_integer()) {
    throw IoError("'" + path + "': header missing type/dim");
  }
  if (blob.header["type"] != want_type) {
    throw IoError("'" + path + "': expected type '" + want_type + "', got '" +
                  blob.header["type"].get<std::string>() + "'");
  }
  const std::int64_t dim = blob.header["dim"].get<std::int64_t>();
  if (dim < 2 || dim > fock::dim_cap()) {
    throw IoError("'" + path + "': header dim out of range");
  }
  const std::int64_t cols = want_type == "state" ? 1 : dim;
  blob.payload.resize(dim, cols);
  in.read(reinterpret_cast<char*>(blob.payload.data()),
          static_cast<std::streamsize>(sizeof(fock::complexd) * dim * cols));
  if (!in) throw IoError("'" + path + "': truncated payload");
  char extra;
  if (in.read(&extra, 1)) throw IoError("'" + path + "': trailing bytes");
  return blob;
}

const char* kind_name(fock::OperatorKind kind) {
  switch (kind) {
    case fock::OperatorKind::hermitian:
      return "hermitian";
    case fock::OperatorKind::unitary:
      return "unitary";
    case fock::OperatorKind::general:
      break;
  }
  return "general";
}

fock::OperatorKind kind_from_name(const std::string& name,
                                  const std::string& path) {
  if (name == "hermitian") return fock::OperatorKind::hermitian;
  if (name == "unitary") return fock::OperatorKind::unitary;
  if (name == "general") return fock::OperatorKind::general;
  throw IoError("'" + path + "': unknown operator kind '" + name + "'");
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void save_state(const std::string& path, const fock::MotionalState& state) {
  ordered_json header{{"type", "state"}, {"dim", state.dim()}};
  save_blob(path, header, state.amplitudes());
}

fock::MotionalState load_state(const std::string& path) {
  Blob blob = load_blob(path, "state");
  return fock::MotionalState(fock::Vector(blob.payload.col(0)));
}

void save_operator(const std::string& path, const fock::Operator& op) {
  ordered_json header{
      {"type", "operator"}, {"dim", op.dim()}, {"kind", kind_name(op.kind())}};
  save_blob(path, header, op.matrix());
}

fock::Operator load_operator(const std::string& path) {
  Blob blob = load_blob(path, "operator");
  if (!blob.header.contains("kind") || !blob.header["kind"].is_string()) {
    throw IoError("'" + path + "': operator header missing kind");
  }
  return fock::Operator(
      std::move(blob.payload),
      kind_from_name(blob.header["kind"].get<std::string>(), path));
}

void save_density(const std::string& path, const fock::MotionalDensity& rho) {
  ordered_json header{{"type", "density"}, {"dim", rho.dim()}};
  save_blob(path, header, rho.matrix());
}

fock::MotionalDensity load_density(const std::string& path) {
  Blob blob = load_blob(path, "density");
  return fock::MotionalDensity(std::move(blob.payload));
}

std::string protocol_csv(const protocols::ProtocolResult& result) {
  std::string out =
      "omega_t,re_rho_eg,im_rho_eg,visibility,phase_unwrapped,success_prob\n";
  for (std::size_t i = 0; i < result.omega_t.size(); ++i) {
    out += fmt(result.omega_t[i]);
    out += ',';
    out += fmt(result.rho_eg[i].real());
    out += ',';
    out += fmt(result.rho_eg[i].imag());
    out += ',';
    out += fmt(result.visibility[i]);
    out += ',';
    out += fmt(result.phase_unwrapped[i]);
    out += ',';
    out += fmt(result.success_prob[i]);
    out += '\n';
  }
  return out;
}

std::string protocol_summary_json(const protocols::ProtocolResult& result) {
  ordered_json j;
  j["points"] = result.omega_t.size();
  j["dim"] = result.dim;
  j["pure_prep"] = result.pure_prep;
  if (result.fit_valid) {
    j["fit"] = ordered_json{{"slope", result.fit.slope},
                            {"intercept", result.fit.intercept},
                            {"residual_rms", result.fit.residual_rms},
                            {"fractional_shift", result.fit.fractional_shift}};
  } else {
    j["fit"] = nullptr;
  }
  j["time_averaged_phase"] =
      result.average_valid ? ordered_json(result.time_averaged_phase)
                           : ordered_json(nullptr);
  if (result.pure_prep) {
    j["witness"] = ordered_json{{"max_one_minus_v", 1.0 - result.min_visibility},
                                {"min_visibility", result.min_visibility}};
  } else {
    j["witness"] = nullptr;
    j["min_visibility"] = result.min_visibility;
  }
  j["mean_success"] = result.mean_success;
  j["flagged_points"] = result.flagged.size();
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("short write to '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return content;
}

}  // namespace propertime::io
