#include <json.hpp>

#include "montest/errors.hpp"
#include "montest/functions.hpp"

namespace montest {

namespace {

using nlohmann::json;

constexpr char kHexDigits[] = "0123456789abcdef";

json to_document(const BooleanFunction& f) {
  json doc;
  doc["n"] = f.n();
  if (const auto* t = dynamic_cast<const TruthTable*>(&f)) {
    doc["kind"] = "truth_table";
    doc["table"] = table_to_hex(*t);
  } else if (const auto* l = dynamic_cast<const Ltf*>(&f)) {
    doc["kind"] = "ltf";
    doc["weights"] = std::vector<double>(l->weights().begin(), l->weights().end());
    doc["threshold"] = l->threshold();
  } else if (const auto* d = dynamic_cast<const TalagrandDnf*>(&f)) {
    doc["kind"] = "talagrand_dnf";
    doc["width"] = d->width();
    doc["clauses"] = d->clauses();
  } else if (const auto* s = dynamic_cast<const ShiftedFunction*>(&f)) {
    doc["kind"] = "shifted";
    doc["shift"] = s->shift_set().members();
    doc["inner"] = to_document(*s->inner());
  } else if (const auto* tr = dynamic_cast<const TruncatedFunction*>(&f)) {
    doc["kind"] = "truncated";
    doc["delta"] = tr->delta();
    doc["inner"] = to_document(*tr->inner());
  } else {
    throw PreconditionError("serialize: unsupported function kind '" + f.kind() + "'");
  }
  return doc;
}

template <class T>
T field(const json& doc, const char* name) {
  if (!doc.contains(name)) throw ParseError(std::string("function document missing field '") + name + "'");
  try {
    return doc.at(name).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("function document field '") + name + "': " + e.what());
  }
}

FunctionPtr from_document(const json& doc) {
  if (!doc.is_object()) throw ParseError("function document must be a JSON object");
  const auto kind = field<std::string>(doc, "kind");
  const auto n = field<std::size_t>(doc, "n");
  if (kind == "truth_table") {
    return std::make_shared<TruthTable>(table_from_hex(n, field<std::string>(doc, "table")));
  }
  if (kind == "ltf") {
    auto w = field<std::vector<double>>(doc, "weights");
    if (w.size() != n) throw ParseError("ltf weights length differs from n");
    return std::make_shared<Ltf>(std::move(w), doc.value("threshold", 0.0));
  }
  if (kind == "talagrand_dnf") {
    return std::make_shared<TalagrandDnf>(n, field<std::vector<std::vector<Coord>>>(doc, "clauses"));
  }
  if (kind == "shifted") {
    auto inner = from_document(field<json>(doc, "inner"));
    const auto members = field<std::vector<Coord>>(doc, "shift");
    return std::make_shared<ShiftedFunction>(inner, VarSet::of(n, members));
  }
  if (kind == "truncated") {
    return std::make_shared<TruncatedFunction>(from_document(field<json>(doc, "inner")), field<double>(doc, "delta"));
  }
  throw ParseError("unknown function kind '" + kind + "'");
}

}  // namespace

std::string table_to_hex(const TruthTable& t) {
  const std::size_t digits = (t.size() + 3) / 4;
  std::string out(digits, '0');
  for (std::size_t k = 0; k < digits; ++k) {
    unsigned v = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t idx = 4 * k + b;
      v = (v << 1) | ((idx < t.size() && t.at(idx)) ? 1u : 0u);
    }
    out[k] = kHexDigits[v];
  }
  return out;
}

TruthTable table_from_hex(std::size_t n, std::string_view hex) {
  if (n > kMaxTableDimension) throw TableTooLarge("truth table dimension too large");
  const std::size_t size = std::size_t{1} << n;
  if (hex.size() != (size + 3) / 4) throw ParseError("truth table hex length does not match 2^n");
  std::vector<std::uint8_t> values(size);
  for (std::size_t k = 0; k < hex.size(); ++k) {
    const char c = hex[k];
    unsigned v;
    if (c >= '0' && c <= '9') {
      v = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      v = static_cast<unsigned>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      v = static_cast<unsigned>(c - 'A' + 10);
    } else {
      throw ParseError("truth table hex contains a non-hex character");
    }
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t idx = 4 * k + b;
      const bool bit = (v >> (3 - b)) & 1u;
      if (idx < size) {
        values[idx] = bit ? 1 : 0;
      } else if (bit) {
        throw ParseError("truth table hex has nonzero padding bits");
      }
    }
  }
  return TruthTable(n, std::move(values));
}

std::string serialize(const BooleanFunction& f) { return to_document(f).dump(); }

FunctionPtr deserialize(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("function document is not valid JSON: ") + e.what());
  }
  return from_document(doc);
}

}  // namespace montest
