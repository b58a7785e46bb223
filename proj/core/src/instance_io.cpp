#include "ragg/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ragg/error.hpp"

namespace ragg {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kInvalidInput, field + ": " + what);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail("<document>", std::string("malformed JSON (") + e.what() + ")");
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

double require_number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

}  // namespace

InfoStructure parse_instance(std::string_view json_text, ValidationOptions options) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) fail("<document>", "expected an object");
  const json& n_field = require(doc, "n", "");
  if (!n_field.is_number_integer()) fail("n", "expected an integer");
  const auto n = n_field.get<long long>();
  if (n < 1 || n > SignalSubset::kMaxExperts) fail("n", "must be in [1, 64]");

  const json& states_field = require(doc, "states", "");
  if (!states_field.is_array()) fail("states", "expected an array");
  std::vector<State> states;
  states.reserve(states_field.size());
  for (std::size_t s = 0; s < states_field.size(); ++s) {
    const std::string where = "states[" + std::to_string(s) + "]";
    const json& st = states_field[s];
    State out;
    out.prob = require_number(require(st, "prob", where), where + ".prob");
    out.y = require_number(require(st, "y", where), where + ".y");
    const json& sig = require(st, "signals", where);
    if (!sig.is_array()) fail(where + ".signals", "expected an array of strings");
    for (std::size_t i = 0; i < sig.size(); ++i) {
      if (!sig[i].is_string()) {
        fail(where + ".signals[" + std::to_string(i) + "]", "expected a string label");
      }
      out.signals.push_back(sig[i].get<std::string>());
    }
    states.push_back(std::move(out));
  }
  return InfoStructure(static_cast<int>(n), std::move(states), options);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidInput, path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

InfoStructure load_instance(const std::filesystem::path& path, ValidationOptions options) {
  return parse_instance(read_text_file(path), options);
}

std::string serialize_instance(const InfoStructure& info) {
  ordered_json doc;
  doc["n"] = info.n_experts();
  ordered_json states = ordered_json::array();
  for (const State& s : info.states()) {
    ordered_json st;
    st["prob"] = s.prob;
    st["signals"] = s.signals;
    st["y"] = s.y;
    states.push_back(std::move(st));
  }
  doc["states"] = std::move(states);
  return doc.dump(2) + "\n";
}

void save_instance(const std::filesystem::path& path, const InfoStructure& info) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidInput, path.string() + ": cannot write file");
  out << serialize_instance(info);
}

Strategy parse_tabular_strategy(std::string_view json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) fail("<document>", "expected an object");
  strategy::Tabular table;
  bool uses_prior = false;
  if (auto it = doc.find("uses_prior"); it != doc.end()) {
    if (!it->is_boolean()) fail("uses_prior", "expected a boolean");
    uses_prior = it->get<bool>();
  }
  if (auto it = doc.find("default"); it != doc.end() && !it->is_null()) {
    table.default_output = require_number(*it, "default");
  }
  const json& entries = require(doc, "entries", "");
  if (!entries.is_array()) fail("entries", "expected an array");
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string where = "entries[" + std::to_string(e) + "]";
    const json& forecasts = require(entries[e], "forecasts", where);
    if (!forecasts.is_array() || forecasts.empty()) {
      fail(where + ".forecasts", "expected a nonempty array of numbers");
    }
    std::vector<double> key;
    for (std::size_t i = 0; i < forecasts.size(); ++i) {
      key.push_back(require_number(forecasts[i], where + ".forecasts[" + std::to_string(i) + "]"));
    }
    const double output = require_number(require(entries[e], "output", where), where + ".output");
    table.table[forecast_key(key)] = output;
  }
  return Strategy::tabular(std::move(table), uses_prior);
}

Strategy load_tabular_strategy(const std::filesystem::path& path) {
  return parse_tabular_strategy(read_text_file(path));
}

}  // namespace ragg
