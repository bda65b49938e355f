#pragma once

// JSON documents for instances and their sidecars (orderings, rotation
// systems, drawings).  Output is canonical: sorted keys, sorted ids.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "levelplan/core.hpp"
#include "levelplan/drawing.hpp"
#include "levelplan/oracles.hpp"

namespace levelplan::io {

/// Malformed JSON; the message carries line and column.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed JSON that does not match the document schema.
class SchemaError : public Error {
 public:
  explicit SchemaError(std::vector<std::string> failures);
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

using Instance = std::variant<LevelGraph, TLevelInstance, CLInstance, SefeInstance, BetweennessInstance>;

struct Document {
  Instance instance;
  std::optional<ReductionProvenance> provenance;
};

/// "level", "tlevel", "cl", "sefe" or "betweenness".
std::string kind_of(const Instance& i);

/// Parses and normalizes (levels compacted, unary tree nodes contracted,
/// ids sorted).
Document parse_document(const std::string& text);
std::string serialize(const Document& d);
Document canonicalize(Document d);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);
Document load(const std::string& path);

std::string serialize_ordering(const LevelOrdering& o);
LevelOrdering parse_ordering(const std::string& text);
/// {"orderings":[...]} or a bare Betweenness order {"order":[...]}.
std::vector<std::string> parse_order(const std::string& text);
std::string serialize_order(const std::vector<std::string>& order);

/// {"rotations":[first, second]}, each a map vertex -> cyclic edge ids.
std::string serialize_rotations(const SefeWitness& w);
SefeWitness parse_rotations(const std::string& text);

std::string serialize_drawing(const LevelDrawing& d);

/// FNV-1a 64-bit of the text, as 16 hex digits.
std::string digest(const std::string& text);

}  // namespace levelplan::io
