#include "rfgap/tensor_io.hpp"

#include <array>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "rfgap/errors.hpp"

namespace rfgap {

std::string_view to_string(TensorKind k) noexcept {
  switch (k) {
    case TensorKind::weyl:
      return "weyl";
    case TensorKind::riemann:
      return "riemann";
    case TensorKind::kahler:
      return "kahler";
  }
  return "unknown";
}

std::optional<TensorKind> parse_kind(std::string_view name) {
  if (name == "auto") return std::nullopt;
  if (name == "weyl") return TensorKind::weyl;
  if (name == "riemann") return TensorKind::riemann;
  if (name == "kahler") return TensorKind::kahler;
  throw ParseError("unknown tensor kind '" + std::string(name) + "'");
}

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + " must be an object");
  const auto it = obj.find(name);
  if (it == obj.end()) throw ParseError("missing field '" + std::string(name) + "' in " + where);
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + " must be a number");
  return j.get<double>();
}

int index_value(const json& j, const std::string& where, int lo, int hi) {
  if (!j.is_number_integer()) throw ParseError(where + " must be an integer");
  const auto v = j.get<long long>();
  if (v < lo || v > hi) {
    std::ostringstream msg;
    msg << where << " = " << v << " is outside [" << lo << ", " << hi << "]";
    throw ParseError(msg.str());
  }
  return static_cast<int>(v);
}

Mat3 matrix3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ParseError(where + " must be a 3x3 array");
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    const std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != 3) throw ParseError(rw + " must be an array of 3 numbers");
    for (int c = 0; c < 3; ++c) m(r, c) = number(row[static_cast<std::size_t>(c)], rw + "[" + std::to_string(c) + "]");
  }
  return m;
}

const json& components_array(const json& doc) {
  const json& comps = field(doc, "components", "document");
  if (!comps.is_array()) throw ParseError("'components' must be an array");
  return comps;
}

bool agrees(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

// --- riemann ---

struct RiemannFill {
  Tensor4 value{};
  std::array<bool, 256> set{};

  void put(int i, int j, int k, int l, double v) {
    const std::size_t s = idx4(i, j, k, l);
    if (set[s] && !agrees(value[s], v)) {
      std::ostringstream msg;
      msg << "conflicting values for R[" << i << "," << j << "," << k << "," << l << "]: " << value[s]
          << " vs " << v;
      throw InvariantViolation(msg.str());
    }
    value[s] = v;
    set[s] = true;
  }

  void orbit(int i, int j, int k, int l, double v) {
    put(i, j, k, l, v);
    put(j, i, k, l, -v);
    put(i, j, l, k, -v);
    put(j, i, l, k, v);
    put(k, l, i, j, v);
    put(l, k, i, j, -v);
    put(k, l, j, i, -v);
    put(l, k, j, i, v);
  }
};

Riemann4 parse_riemann(const json& doc, double tol) {
  RiemannFill f;
  const json& comps = components_array(doc);
  for (std::size_t n = 0; n < comps.size(); ++n) {
    const std::string w = "components[" + std::to_string(n) + "]";
    const json& c = comps[n];
    const int i = index_value(field(c, "i", w), w + ".i", 0, 3);
    const int j = index_value(field(c, "j", w), w + ".j", 0, 3);
    const int k = index_value(field(c, "k", w), w + ".k", 0, 3);
    const int l = index_value(field(c, "l", w), w + ".l", 0, 3);
    f.orbit(i, j, k, l, number(field(c, "v", w), w + ".v"));
  }
  // Bianchi: R0123 + R0231 + R0312 = 0.
  const std::array<std::array<int, 4>, 3> mixed{{{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}}};
  int missing = -1, n_missing = 0;
  for (int m = 0; m < 3; ++m) {
    const auto& t = mixed[static_cast<std::size_t>(m)];
    if (!f.set[idx4(t[0], t[1], t[2], t[3])]) {
      missing = m;
      ++n_missing;
    }
  }
  if (n_missing == 1) {
    double sum = 0.0;
    for (int m = 0; m < 3; ++m) {
      const auto& t = mixed[static_cast<std::size_t>(m)];
      if (m != missing) sum += f.value[idx4(t[0], t[1], t[2], t[3])];
    }
    const auto& t = mixed[static_cast<std::size_t>(missing)];
    f.orbit(t[0], t[1], t[2], t[3], -sum);
  }
  return Riemann4::validated(f.value, tol);
}

// --- kahler ---

struct KahlerFill {
  KArray value{};
  std::array<bool, 16> set{};

  void put(int a, int b, int c, int d, cplx v) {
    const std::size_t s = idx_k(a, b, c, d);
    if (set[s] && !(agrees(value[s].real(), v.real()) && agrees(value[s].imag(), v.imag()))) {
      std::ostringstream msg;
      msg << "conflicting values for R[" << a + 1 << "," << b + 1 << "," << c + 1 << "," << d + 1
          << "]: " << value[s] << " vs " << v;
      throw InvariantViolation(msg.str());
    }
    value[s] = v;
    set[s] = true;
  }

  void orbit(int a, int b, int c, int d, cplx v) {
    const std::array<std::array<int, 4>, 4> k{{{a, b, c, d}, {c, b, a, d}, {a, d, c, b}, {c, d, a, b}}};
    for (const auto& t : k) {
      put(t[0], t[1], t[2], t[3], v);
      put(t[1], t[0], t[3], t[2], std::conj(v));
    }
  }
};

KahlerCurv2 parse_kahler(const json& doc, double tol) {
  KahlerFill f;
  const json& comps = components_array(doc);
  for (std::size_t n = 0; n < comps.size(); ++n) {
    const std::string w = "components[" + std::to_string(n) + "]";
    const json& c = comps[n];
    const int a = index_value(field(c, "a", w), w + ".a", 1, 2) - 1;
    const int b = index_value(field(c, "b", w), w + ".b", 1, 2) - 1;
    const int cc = index_value(field(c, "c", w), w + ".c", 1, 2) - 1;
    const int d = index_value(field(c, "d", w), w + ".d", 1, 2) - 1;
    const double re = number(field(c, "re", w), w + ".re");
    const auto im_it = c.find("im");
    const double im = im_it == c.end() ? 0.0 : number(*im_it, w + ".im");
    f.orbit(a, b, cc, d, cplx(re, im));
  }
  return KahlerCurv2::validated(f.value, tol);
}

}  // namespace

TensorFile parse_tensor(std::string_view text, std::optional<TensorKind> expected, double tol) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    std::ostringstream msg;
    msg << "malformed JSON at line " << line << ", column " << col << ": " << e.what();
    throw ParseError(msg.str());
  }
  const json& kind_field = field(doc, "kind", "document");
  if (!kind_field.is_string()) throw ParseError("'kind' must be a string");
  const std::string kind_name = kind_field.get<std::string>();
  if (kind_name == "auto") throw ParseError("'kind' must be weyl, riemann or kahler");
  const std::optional<TensorKind> kind = parse_kind(kind_name);
  if (expected && *expected != *kind) {
    throw ParseError("file has kind '" + kind_name + "' but '" + std::string(to_string(*expected)) +
                     "' was requested");
  }

  TensorFile out;
  out.kind = *kind;
  switch (out.kind) {
    case TensorKind::weyl: {
      WeylBlocks w;
      w.w_plus = matrix3(field(doc, "w_plus", "document"), "w_plus");
      w.w_minus = matrix3(field(doc, "w_minus", "document"), "w_minus");
      out.riemann = to_riemann(w);
      out.weyl = w;
      break;
    }
    case TensorKind::riemann:
      out.riemann = parse_riemann(doc, tol);
      break;
    case TensorKind::kahler:
      out.kahler = parse_kahler(doc, tol);
      break;
  }
  return out;
}

namespace {

// Signed zeros would make equal tensors print differently.
double unsigned_zero(double x) { return x == 0.0 ? 0.0 : x; }

}  // namespace

json weyl_to_json(const WeylBlocks& w) {
  auto rows = [](const Mat3& m) {
    json a = json::array();
    for (int r = 0; r < 3; ++r) a.push_back({unsigned_zero(m(r, 0)), unsigned_zero(m(r, 1)), unsigned_zero(m(r, 2))});
    return a;
  };
  return json{{"kind", "weyl"}, {"w_plus", rows(w.w_plus)}, {"w_minus", rows(w.w_minus)}};
}

json riemann_to_json(const Riemann4& r) {
  json comps = json::array();
  for (std::size_t p = 0; p < kBivectorPairs.size(); ++p)
    for (std::size_t q = p; q < kBivectorPairs.size(); ++q) {
      const auto [i, j] = kBivectorPairs[p];
      const auto [k, l] = kBivectorPairs[q];
      comps.push_back({{"i", i}, {"j", j}, {"k", k}, {"l", l}, {"v", unsigned_zero(r(i, j, k, l))}});
    }
  return json{{"kind", "riemann"}, {"components", comps}};
}

json kahler_to_json(const KahlerCurv2& r) {
  static constexpr std::array<std::array<int, 4>, 6> reps{
      {{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 1}}};
  json comps = json::array();
  for (const auto& t : reps) {
    const cplx v = r(t[0], t[1], t[2], t[3]);
    comps.push_back({{"a", t[0] + 1}, {"b", t[1] + 1}, {"c", t[2] + 1}, {"d", t[3] + 1}, {"re", unsigned_zero(v.real())},
                     {"im", unsigned_zero(v.imag())}});
  }
  return json{{"kind", "kahler"}, {"components", comps}};
}

std::string canonical_text(const json& doc) { return doc.dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "': " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "': " + std::strerror(errno));
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

std::string sha256_digest(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  std::ostringstream hex;
  hex << "sha256:" << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) hex << std::setw(2) << static_cast<int>(md[i]);
  return hex.str();
}

}  // namespace rfgap
