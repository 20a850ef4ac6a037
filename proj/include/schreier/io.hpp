#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "schreier/actions.hpp"

namespace schreier {

using Json = nlohmann::ordered_json;

/// Written into every file; files without it are accepted, files with any
/// other value are rejected.
inline constexpr int kFormatVersion = 1;

Json to_json(const Algebra& a);
Json to_json(const Hom& h);
Json to_json(const Point& p);
Json to_json(const MonoidAction& a);
Json to_json(const SemiringAction& a);
Json to_json(const AnyAction& a);
Json to_json(const SchreierWitness& w);
Json to_json(const LawReport& r);

/// Replaces every algebra reference that is a file path by the file's
/// contents, recursively, so the result is self-contained. "builtin:NAME"
/// references are kept. Paths are relative to `base`.
Json inline_references(const Json& j, const std::filesystem::path& base);

/// Loaders accept inline objects or references ("builtin:NAME" or a path
/// relative to `base`). Malformed input raises StructuralError.
AlgebraRef algebra_from_json(const Json& j, const std::filesystem::path& base = {});
Hom hom_from_json(const Json& j, const std::filesystem::path& base = {});
Point point_from_json(const Json& j, const std::filesystem::path& base = {});
AnyAction action_from_json(const Json& j, const std::filesystem::path& base = {});
SchreierWitness witness_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
/// Stable text form: two-space indentation and a trailing newline.
std::string dump(const Json& j);

AlgebraRef load_algebra_file(const std::filesystem::path& path);
Hom load_hom_file(const std::filesystem::path& path);
Point load_point_file(const std::filesystem::path& path);
AnyAction load_action_file(const std::filesystem::path& path);

/// Checks the optional "version" field.
void check_version(const Json& j);

}  // namespace schreier
