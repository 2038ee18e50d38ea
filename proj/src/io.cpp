#include "genfid/io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace genfid::io {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::generic: return "generic";
    case MatrixKind::hermitian: return "hermitian";
    case MatrixKind::pd: return "pd";
    case MatrixKind::unitary: return "unitary";
  }
  return "generic";
}

namespace {

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset; ++i)
    if (text[i] == '\n') ++line;
  return line;
}

// Line of the first occurrence of "key", or 1.
std::size_t line_of_key(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const auto pos = text.find(quoted);
  return pos == std::string_view::npos ? 1 : line_of_offset(text, pos);
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& msg) {
  std::ostringstream os;
  os << source << ":" << line << ": " << msg;
  throw InputError(os.str());
}

json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    fail(source, line_of_offset(text, byte), std::string("JSON parse error: ") + e.what());
  }
}

const json& field(const json& obj, std::string_view key, std::string_view text,
                  const std::string& source, std::size_t obj_line) {
  if (!obj.is_object()) fail(source, obj_line, "expected a JSON object");
  const auto it = obj.find(std::string(key));
  if (it == obj.end()) fail(source, obj_line, "missing key \"" + std::string(key) + "\"");
  (void)text;
  return *it;
}

Eigen::Index read_dim(const json& v, std::string_view key, std::string_view text,
                      const std::string& source) {
  const std::size_t line = line_of_key(text, key);
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 4096) {
    fail(source, line, "\"" + std::string(key) + "\" must be a positive integer");
  }
  return static_cast<Eigen::Index>(v.get<long long>());
}

Eigen::MatrixXd read_real_block(const json& v, Eigen::Index rows, Eigen::Index cols,
                                std::string_view key, std::size_t line,
                                const std::string& source) {
  const std::string k(key);
  if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != rows) {
    fail(source, line, "\"" + k + "\" must be an array of " + std::to_string(rows) + " rows");
  }
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      fail(source, line,
           "\"" + k + "\" row " + std::to_string(i) + " must have " + std::to_string(cols) +
               " entries");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      const json& e = row[static_cast<std::size_t>(j)];
      if (!e.is_number()) {
        fail(source, line,
             "\"" + k + "\"[" + std::to_string(i) + "][" + std::to_string(j) + "] is not a number");
      }
      out(i, j) = e.get<double>();
      if (!std::isfinite(out(i, j))) fail(source, line, "non-finite entry in \"" + k + "\"");
    }
  }
  return out;
}

MatrixKind parse_kind(const json& v, std::size_t line, const std::string& source) {
  if (!v.is_string()) fail(source, line, "\"kind\" must be a string");
  const auto s = v.get<std::string>();
  if (s == "generic") return MatrixKind::generic;
  if (s == "hermitian") return MatrixKind::hermitian;
  if (s == "pd") return MatrixKind::pd;
  if (s == "unitary") return MatrixKind::unitary;
  fail(source, line, "unknown kind \"" + s + "\" (expected generic, hermitian, pd, unitary)");
}

ordered_json block_to_json(const Eigen::MatrixXd& b) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < b.cols(); ++j) row.push_back(b(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path.string() + ":1: cannot open for writing");
  out << text;
  if (!out) throw InputError(path.string() + ":1: write failed");
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ":1: cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MatrixFile parse_matrix(std::string_view text, const std::string& source,
                        const ToleranceProfile& tol) {
  const json doc = parse_json(text, source);
  const Eigen::Index d = read_dim(field(doc, "d", text, source, 1), "d", text, source);
  const auto re = read_real_block(field(doc, "re", text, source, 1), d, d, "re",
                                  line_of_key(text, "re"), source);
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(d, d);
  if (doc.contains("im")) im = read_real_block(doc["im"], d, d, "im", line_of_key(text, "im"), source);
  MatrixKind kind = MatrixKind::generic;
  const std::size_t kind_line = line_of_key(text, "kind");
  if (doc.contains("kind")) kind = parse_kind(doc["kind"], kind_line, source);

  MatrixFile mf;
  mf.kind = kind;
  mf.m.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) mf.m(i, j) = Complex(re(i, j), im(i, j));
  try {
    switch (kind) {
      case MatrixKind::generic: break;
      case MatrixKind::hermitian: (void)HermMatrix(mf.m, tol); break;
      case MatrixKind::pd: (void)PDMatrix(mf.m, tol); break;
      case MatrixKind::unitary: (void)UnitaryM(mf.m, tol); break;
    }
  } catch (const Error& e) {
    fail(source, kind_line,
         "declared kind \"" + std::string(to_string(kind)) + "\" fails validation: " + e.what());
  }
  return mf;
}

MatrixFile read_matrix_file(const std::filesystem::path& path, const ToleranceProfile& tol) {
  return parse_matrix(read_text(path), path.string(), tol);
}

ordered_json matrix_to_json(const MatrixC& m, MatrixKind kind) {
  ordered_json j;
  j["d"] = m.rows();
  j["re"] = block_to_json(m.real());
  j["im"] = block_to_json(m.imag());
  j["kind"] = std::string(to_string(kind));
  return j;
}

void write_matrix_file(const std::filesystem::path& path, const MatrixC& m, MatrixKind kind) {
  write_text(path, matrix_to_json(m, kind).dump(2) + "\n");
}

KrausSet parse_channel(std::string_view text, const std::string& source,
                       const ToleranceProfile& tol) {
  const json doc = parse_json(text, source);
  const Eigen::Index d_in = read_dim(field(doc, "d_in", text, source, 1), "d_in", text, source);
  const Eigen::Index d_out =
      read_dim(field(doc, "d_out", text, source, 1), "d_out", text, source);
  const json& ks = field(doc, "kraus", text, source, 1);
  const std::size_t line = line_of_key(text, "kraus");
  if (!ks.is_array() || ks.empty()) fail(source, line, "\"kraus\" must be a non-empty array");
  std::vector<MatrixC> ops;
  for (std::size_t n = 0; n < ks.size(); ++n) {
    const json& k = ks[n];
    if (!k.is_object() || !k.contains("re")) {
      fail(source, line, "kraus[" + std::to_string(n) + "] must be an object with \"re\"");
    }
    const auto re = read_real_block(k["re"], d_out, d_in, "re", line, source);
    Eigen::MatrixXd im = Eigen::MatrixXd::Zero(d_out, d_in);
    if (k.contains("im")) im = read_real_block(k["im"], d_out, d_in, "im", line, source);
    MatrixC op(d_out, d_in);
    for (Eigen::Index i = 0; i < d_out; ++i)
      for (Eigen::Index j = 0; j < d_in; ++j) op(i, j) = Complex(re(i, j), im(i, j));
    ops.push_back(std::move(op));
  }
  try {
    return KrausSet(std::move(ops), tol);
  } catch (const Error& e) {
    fail(source, line, std::string("invalid Kraus set: ") + e.what());
  }
}

KrausSet read_channel_file(const std::filesystem::path& path, const ToleranceProfile& tol) {
  return parse_channel(read_text(path), path.string(), tol);
}

void write_channel_file(const std::filesystem::path& path, const KrausSet& k) {
  ordered_json j;
  j["d_in"] = k.d_in();
  j["d_out"] = k.d_out();
  ordered_json ops = ordered_json::array();
  for (const auto& op : k.kraus()) {
    ordered_json o;
    o["re"] = block_to_json(op.real());
    o["im"] = block_to_json(op.imag());
    ops.push_back(std::move(o));
  }
  j["kraus"] = std::move(ops);
  write_text(path, j.dump(2) + "\n");
}

#define GENFID_TOL_FIELDS(X)                                                              \
  X(herm_tol) X(unitary_tol) X(pd_tol) X(recon_tol) X(inv_tol) X(sim_tol) X(spec_tol)   \
  X(comm_tol) X(fid_tol) X(imag_tol) X(realize_tol) X(mono_tol) X(margin_tol)           \
  X(scalar_tol) X(det_tol) X(channel_tol) X(bisect_width)

ToleranceProfile read_tolerance_file(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  const std::string source = path.string();
  const json doc = parse_json(text, source);
  if (!doc.is_object()) fail(source, 1, "tolerance profile must be a JSON object");
  ToleranceProfile tol;
  for (const auto& [key, value] : doc.items()) {
    const std::size_t line = line_of_key(text, key);
    bool known = false;
#define GENFID_READ(name)                                                         \
  if (key == #name) {                                                             \
    if (!value.is_number() || !(value.get<double>() > 0.0)) {                     \
      fail(source, line, "\"" #name "\" must be a positive number");              \
    }                                                                             \
    tol.name = value.get<double>();                                               \
    known = true;                                                                 \
  }
    GENFID_TOL_FIELDS(GENFID_READ)
#undef GENFID_READ
    if (key == "bisect_max_iter") {
      if (!value.is_number_integer() || value.get<long long>() < 1) {
        fail(source, line, "\"bisect_max_iter\" must be a positive integer");
      }
      tol.bisect_max_iter = static_cast<int>(value.get<long long>());
      known = true;
    }
    if (!known) fail(source, line, "unknown tolerance \"" + key + "\"");
  }
  return tol;
}

ordered_json tolerances_to_json(const ToleranceProfile& tol) {
  ordered_json j;
#define GENFID_WRITE(name) j[#name] = tol.name;
  GENFID_TOL_FIELDS(GENFID_WRITE)
#undef GENFID_WRITE
  j["bisect_max_iter"] = tol.bisect_max_iter;
  return j;
}

double round15(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

std::string format15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(digest[i]);
  return os.str();
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_text(path)); }

std::string curve_csv(const PolarCurve& c) {
  std::string out = "x,phi_p,phi_q,f_pol\n";
  for (std::size_t k = 0; k < c.xs.size(); ++k) {
    out += format15(c.xs[k]) + "," + format15(c.phi_p[k]) + "," + format15(c.phi_q[k]) + "," +
           format15(c.f_pol[k]) + "\n";
  }
  return out;
}

}  // namespace genfid::io
