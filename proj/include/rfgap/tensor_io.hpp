#pragma once

// JSON tensor files.
//
//   {"kind":"weyl","w_plus":[[...],[...],[...]],"w_minus":[[...],[...],[...]]}
//   {"kind":"riemann","components":[{"i":0,"j":1,"k":0,"l":1,"v":1.0}, ...]}
//   {"kind":"kahler","components":[{"a":1,"b":1,"c":2,"d":2,"re":1.0,"im":0.0}, ...]}
//
// Riemann and Kahler files list a generating set; every unlisted component is
// filled from the symmetry orbits of the listed ones. For Riemann files, if
// exactly one of the three all-distinct-index orbits (0123, 0231, 0312) is
// missing it is filled from the first Bianchi identity.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rfgap/curvature.hpp"
#include "rfgap/kahler.hpp"

namespace rfgap {

using nlohmann::json;

enum class TensorKind { weyl, riemann, kahler };

[[nodiscard]] std::string_view to_string(TensorKind k) noexcept;

/// "auto" yields nullopt; unknown names throw ParseError.
[[nodiscard]] std::optional<TensorKind> parse_kind(std::string_view name);

struct TensorFile {
  TensorKind kind = TensorKind::riemann;
  std::optional<WeylBlocks> weyl;
  Riemann4 riemann;     ///< set for weyl and riemann files
  KahlerCurv2 kahler;   ///< set for kahler files
};

/// Parses and validates. Throws ParseError (malformed JSON reports line and
/// column; schema errors name the offending field) or InvariantViolation.
/// `expected` rejects files of another kind.
[[nodiscard]] TensorFile parse_tensor(std::string_view text,
                                      std::optional<TensorKind> expected = std::nullopt,
                                      double tol = kInvariantTol);

/// Canonical documents. Riemann output lists the 21 orbit representatives
/// (P, Q), P <= Q, over the bivector pairs 01, 02, 03, 23, 31, 12; Kahler
/// output lists the six representatives 1111, 1112, 1212, 1122, 1222, 2222.
[[nodiscard]] json weyl_to_json(const WeylBlocks& w);
[[nodiscard]] json riemann_to_json(const Riemann4& r);
[[nodiscard]] json kahler_to_json(const KahlerCurv2& r);

/// Serialized text of a canonical document (two-space indent, trailing newline).
[[nodiscard]] std::string canonical_text(const json& doc);

/// Throws IoError with the path in the message.
[[nodiscard]] std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

/// "sha256:<hex>".
[[nodiscard]] std::string sha256_digest(std::string_view bytes);

}  // namespace rfgap
