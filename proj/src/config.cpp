#include "fppweb/config.hpp"

#include <algorithm>
#include "json.hpp"
#include <stdexcept>

#include "fppweb/csv.hpp"
#include "fppweb/error.hpp"

namespace fppweb {
namespace {

using nlohmann::json;

std::string line_of(const std::string& text, std::size_t byte) {
  const auto end = std::min(byte, text.size());
  const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n');
  return "line " + std::to_string(line);
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(where + "." + key, "missing field");
  return *it;
}

std::int64_t as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where, "expected an integer");
  return j.get<std::int64_t>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where, "expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where, "expected an array");
  return j;
}

// Rationals are [num, den] pairs; a bare integer is accepted as den = 1.
Rational as_rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_array() || j.size() != 2) throw ConfigError(where, "expected [num, den]");
  const auto num = as_int(j[0], where + "[0]");
  const auto den = as_int(j[1], where + "[1]");
  if (den <= 0) throw ConfigError(where, "denominator must be positive");
  return Rational(num, den);
}

template <class F>
auto wrap(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(where, e.what());
  }
}

template <class T>
const T& lookup(const std::map<std::string, T>& m, const std::string& name, const char* kind) {
  const auto it = m.find(name);
  if (it == m.end()) throw ConfigError(kind, "unknown name '" + name + "'");
  return it->second;
}

}  // namespace

RunConfig RunConfig::defaults() {
  RunConfig c;
  for (const char* name : {"simple", "lazy", "pm12"}) c.specs.emplace(name, *presets::by_name(name));
  for (const char* name : {"fig5", "cross"}) c.jump_sets.emplace(name, *presets::jumps_by_name(name));
  return c;
}

RunConfig RunConfig::parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(line_of(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
  }
  if (!doc.is_object()) throw ConfigError("line 1", "top level must be an object");

  RunConfig c = defaults();
  static const char* known[] = {"seed",        "output_dir",  "increment_specs", "jump_sets",
                                "windows",     "itineraries", "plans"};
  for (const auto& [key, _] : doc.items())
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw ConfigError(key, "unknown field");

  if (doc.contains("seed")) {
    const auto& s = doc["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0))
      throw ConfigError("seed", "expected a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("output_dir")) c.output_dir = as_string(doc["output_dir"], "output_dir");

  if (doc.contains("increment_specs")) {
    const auto& arr = as_array(doc["increment_specs"], "increment_specs");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string w = "increment_specs[" + std::to_string(i) + "]";
      const auto name = as_string(field(arr[i], "name", w), w + ".name");
      const auto& sup = as_array(field(arr[i], "support", w), w + ".support");
      std::vector<SupportPoint> pts;
      for (std::size_t k = 0; k < sup.size(); ++k) {
        const std::string wk = w + ".support[" + std::to_string(k) + "]";
        if (!sup[k].is_array() || sup[k].size() != 3) throw ConfigError(wk, "expected [value, num, den]");
        const auto den = as_int(sup[k][2], wk + "[2]");
        if (den <= 0) throw ConfigError(wk, "denominator must be positive");
        pts.push_back({as_int(sup[k][0], wk + "[0]"), Rational(as_int(sup[k][1], wk + "[1]"), den)});
      }
      c.specs.insert_or_assign(name, wrap(w, [&] { return IncrementSpec(name, pts); }));
    }
  }

  if (doc.contains("jump_sets")) {
    const auto& arr = as_array(doc["jump_sets"], "jump_sets");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string w = "jump_sets[" + std::to_string(i) + "]";
      const auto name = as_string(field(arr[i], "name", w), w + ".name");
      const auto& offs = as_array(field(arr[i], "offsets", w), w + ".offsets");
      std::vector<Offset> o;
      for (std::size_t k = 0; k < offs.size(); ++k) {
        const std::string wk = w + ".offsets[" + std::to_string(k) + "]";
        if (!offs[k].is_array() || offs[k].size() != 2) throw ConfigError(wk, "expected [dx, dt]");
        o.push_back({as_int(offs[k][0], wk + "[0]"), as_int(offs[k][1], wk + "[1]")});
      }
      c.jump_sets.insert_or_assign(name, wrap(w, [&] { return JumpSet(name, o); }));
    }
  }

  if (doc.contains("windows")) {
    const auto& arr = as_array(doc["windows"], "windows");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string w = "windows[" + std::to_string(i) + "]";
      const auto name = as_string(field(arr[i], "name", w), w + ".name");
      auto get = [&](const char* k) { return as_int(field(arr[i], k, w), w + "." + k); };
      const auto x0 = get("x_min"), x1 = get("x_max"), t0 = get("t_min"), t1 = get("t_max");
      c.windows.insert_or_assign(name, wrap(w, [&] { return Window(x0, x1, t0, t1); }));
    }
  }

  if (doc.contains("itineraries")) {
    const auto& arr = as_array(doc["itineraries"], "itineraries");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string w = "itineraries[" + std::to_string(i) + "]";
      const auto name = as_string(field(arr[i], "name", w), w + ".name");
      Itinerary it;
      it.x = as_rational(field(arr[i], "x", w), w + ".x");
      it.s = as_rational(field(arr[i], "s", w), w + ".s");
      const auto& sig = as_array(field(arr[i], "sigma", w), w + ".sigma");
      for (std::size_t k = 0; k < sig.size(); ++k)
        it.sigma.push_back(as_rational(sig[k], w + ".sigma[" + std::to_string(k) + "]"));
      const auto& eta = as_array(field(arr[i], "eta", w), w + ".eta");
      for (std::size_t k = 0; k < eta.size(); ++k)
        it.eta.push_back(static_cast<int>(as_int(eta[k], w + ".eta[" + std::to_string(k) + "]")));
      wrap(w, [&] { it.validate(); return 0; });
      c.itineraries.insert_or_assign(name, it);
    }
  }

  if (doc.contains("plans")) {
    const auto& arr = as_array(doc["plans"], "plans");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string w = "plans[" + std::to_string(i) + "]";
      const auto& p = arr[i];
      const auto name = as_string(field(p, "name", w), w + ".name");
      const auto& seeds = field(p, "seeds", w);
      if (!seeds.is_array() || seeds.size() != 2) throw ConfigError(w + ".seeds", "expected [first, count]");
      const auto first = as_int(seeds[0], w + ".seeds[0]");
      const auto count = as_int(seeds[1], w + ".seeds[1]");
      if (first < 0 || count < 0) throw ConfigError(w + ".seeds", "must be non-negative");
      std::vector<std::int64_t> ns;
      const auto& nv = as_array(field(p, "n_values", w), w + ".n_values");
      for (std::size_t k = 0; k < nv.size(); ++k) ns.push_back(as_int(nv[k], w + ".n_values[" + std::to_string(k) + "]"));
      auto resolve = [&](const char* key, auto& table, const char* kind) -> decltype(auto) {
        const auto ref = as_string(field(p, key, w), w + "." + key);
        const auto it = table.find(ref);
        if (it == table.end()) throw ConfigError(w + "." + key, std::string("unknown ") + kind + " '" + ref + "'");
        return (it->second);
      };
      TrialPlan plan{name,
                     {static_cast<std::uint64_t>(first), static_cast<std::uint64_t>(count)},
                     ns,
                     resolve("spec", c.specs, "increment spec"),
                     resolve("jumps", c.jump_sets, "jump set"),
                     resolve("itinerary", c.itineraries, "itinerary"),
                     as_rational(field(p, "horizon", w), w + ".horizon"),
                     std::nullopt,
                     false};
      if (p.contains("window")) plan.window = resolve("window", c.windows, "window");
      if (p.contains("allow_nonsquare")) {
        if (!p["allow_nonsquare"].is_boolean()) throw ConfigError(w + ".allow_nonsquare", "expected a boolean");
        plan.allow_nonsquare = p["allow_nonsquare"].get<bool>();
      }
      wrap(w, [&] { plan.validate(); return 0; });
      c.plans.push_back(std::move(plan));
    }
  }
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& file) {
  std::string text;
  try {
    text = read_text(file);
  } catch (const std::exception& e) {
    throw ConfigError(file.string(), e.what());
  }
  return parse(text);
}

const IncrementSpec& RunConfig::spec(const std::string& name) const { return lookup(specs, name, "spec"); }
const JumpSet& RunConfig::jumps(const std::string& name) const { return lookup(jump_sets, name, "jumps"); }
const Window& RunConfig::window(const std::string& name) const { return lookup(windows, name, "window"); }
const Itinerary& RunConfig::itinerary(const std::string& name) const {
  return lookup(itineraries, name, "itinerary");
}

}  // namespace fppweb
