#include <qrok/specdoc.hpp>

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace qrok {

using json = nlohmann::json;

namespace {

constexpr long long kBig = 1'000'000'000;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw SchemaError(path + ": " + why);
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

void need_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

long long get_int(const json& j, const std::string& path, long long lo, long long hi) {
  if (!j.is_number_integer())
    fail(path, "expected an integer");
  long long v = j.get<long long>();
  if (v < lo || v > hi)
    fail(path, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

std::string get_str(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

bool get_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected a boolean");
  return j.get<bool>();
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) fail(path + "." + it.key(), "unknown field");
  }
}

long long get_prime(const json& j, const std::string& path) {
  long long p = get_int(j, path, 2, 1'000'000);
  if (!is_prime(BigInt(p))) fail(path, "expected a prime");
  return p;
}

FgAbelianGroup parse_group(const json& j, const std::string& path) {
  need_object(j, path);
  check_keys(j, path, {"rank", "torsion"});
  FgAbelianGroup g;
  const json* r = find(j, "rank");
  if (!r) fail(path + ".rank", "missing required field");
  g.rank = get_int(*r, path + ".rank", 0, 1024);
  if (const json* t = find(j, "torsion")) {
    if (!t->is_array()) fail(path + ".torsion", "expected an array of integers >= 2");
    for (size_t i = 0; i < t->size(); ++i)
      g.torsion.push_back(
          get_int((*t)[i], path + ".torsion[" + std::to_string(i) + "]", 2, 1'000'000));
  }
  if (g.ngens() == 0) fail(path, "the trivial group embeds nothing; give rank or torsion");
  return g;
}

FactorSequence parse_sequence(const json& j, const std::string& path) {
  need_object(j, path);
  check_keys(j, path, {"rule", "value", "p", "entries"});
  const json* r = find(j, "rule");
  if (!r) fail(path + ".rule", "missing required field");
  std::string rule = get_str(*r, path + ".rule");
  if (rule == "linear") return FactorSequence::linear();
  if (rule == "factorial") return FactorSequence::factorial();
  if (rule == "constant") {
    const json* v = find(j, "value");
    if (!v) fail(path + ".value", "the constant rule needs a value");
    return FactorSequence::constant(get_int(*v, path + ".value", 2, 1'000'000));
  }
  if (rule == "prime_power") {
    const json* v = find(j, "p");
    if (!v) fail(path + ".p", "the prime power rule needs a prime");
    return FactorSequence::prime_power(get_prime(*v, path + ".p"));
  }
  if (rule == "table") {
    const json* v = find(j, "entries");
    if (!v) fail(path + ".entries", "the table rule needs entries");
    if (!v->is_array() || v->empty()) fail(path + ".entries", "expected a nonempty array");
    std::vector<long long> entries;
    for (size_t i = 0; i < v->size(); ++i)
      entries.push_back(
          get_int((*v)[i], path + ".entries[" + std::to_string(i) + "]", 2, 1'000'000));
    return FactorSequence::table(std::move(entries));
  }
  fail(path + ".rule", "expected one of linear, factorial, constant, prime_power, table");
}

CoordinateRule parse_rule(const json& j, const std::string& path) {
  need_object(j, path);
  check_keys(j, path, {"rule", "multiplier", "p", "value", "entries", "zero_beyond"});
  const json* r = find(j, "rule");
  if (!r) fail(path + ".rule", "missing required field");
  std::string rule = get_str(*r, path + ".rule");
  if (rule == "quotient_mod" || rule == "factorial_mod") {
    BigInt mult(1);
    if (const json* m = find(j, "multiplier"))
      mult = BigInt(get_int(*m, path + ".multiplier", -kBig, kBig));
    return rule == "quotient_mod" ? CoordinateRule::quotient_mod(mult)
                                  : CoordinateRule::factorial_mod(mult);
  }
  if (rule == "padic_digits") {
    const json* p = find(j, "p");
    if (!p) fail(path + ".p", "the p-adic rule needs a prime");
    const json* v = find(j, "value");
    if (!v) fail(path + ".value", "the p-adic rule needs a rational value string");
    Rational val;
    try {
      val = rat_parse(get_str(*v, path + ".value"));
    } catch (const InvalidInput& e) {
      fail(path + ".value", e.what());
    }
    return CoordinateRule::padic(get_prime(*p, path + ".p"), val);
  }
  if (rule == "table") {
    const json* v = find(j, "entries");
    if (!v) fail(path + ".entries", "the table rule needs entries");
    if (!v->is_array()) fail(path + ".entries", "expected an array");
    std::vector<BigInt> entries;
    for (size_t i = 0; i < v->size(); ++i)
      entries.emplace_back(
          get_int((*v)[i], path + ".entries[" + std::to_string(i) + "]", 0, kBig));
    bool zb = false;
    if (const json* z = find(j, "zero_beyond")) zb = get_bool(*z, path + ".zero_beyond");
    return CoordinateRule::custom(std::move(entries), zb);
  }
  fail(path + ".rule", "expected one of quotient_mod, factorial_mod, padic_digits, table");
}

std::vector<std::vector<BigInt>> parse_elements(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of coordinate arrays");
  std::vector<std::vector<BigInt>> out;
  for (size_t i = 0; i < j.size(); ++i) {
    const json& e = j[i];
    std::string ep = path + "[" + std::to_string(i) + "]";
    if (!e.is_array() || e.empty()) fail(ep, "expected a nonempty coordinate array");
    std::vector<BigInt> coords;
    for (size_t c = 0; c < e.size(); ++c)
      coords.emplace_back(get_int(e[c], ep + "[" + std::to_string(c) + "]", -kBig, kBig));
    out.push_back(std::move(coords));
  }
  return out;
}

TaskSpec parse_task(const json& j, const std::string& path) {
  need_object(j, path);
  check_keys(j, path,
             {"command", "elements", "horizon", "box", "power_bound", "level", "word_len",
              "stages", "test_stage", "epsilon", "stage_cap", "prime_bound", "successor_stages",
              "rokhlin_flag", "infinite_rank", "rank", "torsion", "p_stage", "p_support",
              "a_stage", "a_matrix"});
  TaskSpec t;
  const json* c = find(j, "command");
  if (!c) fail(path + ".command", "missing required field");
  t.command = get_str(*c, path + ".command");
  if (t.command == "report")
    fail(path + ".command", "\"report\" is the bundle command; tasks name a concrete analysis");
  if (t.command != "analyze" && t.command != "induce" && t.command != "tower" &&
      t.command != "witness" && t.command != "bratteli" && t.command != "kgroups")
    fail(path + ".command",
         "expected one of analyze, induce, tower, witness, bratteli, kgroups");

  if (const json* v = find(j, "elements")) t.elements = parse_elements(*v, path + ".elements");
  if (const json* v = find(j, "horizon")) t.horizon = get_int(*v, path + ".horizon", 1, 100000);
  if (const json* v = find(j, "box")) t.box = get_int(*v, path + ".box", 1, 4096);
  if (const json* v = find(j, "power_bound"))
    t.power_bound = get_int(*v, path + ".power_bound", 1, 4096);
  if (const json* v = find(j, "level")) t.level = get_int(*v, path + ".level", 1, 64);
  if (const json* v = find(j, "word_len")) t.word_len = get_int(*v, path + ".word_len", 1, 10);
  if (const json* v = find(j, "stages")) t.stages = get_int(*v, path + ".stages", 1, 64);
  if (const json* v = find(j, "test_stage"))
    t.test_stage = get_int(*v, path + ".test_stage", 0, 16);
  if (const json* v = find(j, "stage_cap"))
    t.stage_cap = get_int(*v, path + ".stage_cap", 2, 1 << 20);
  if (const json* v = find(j, "epsilon")) {
    std::string s = get_str(*v, path + ".epsilon");
    try {
      t.epsilon = rat_parse(s);
    } catch (const InvalidInput& e) {
      fail(path + ".epsilon", e.what());
    }
    if (t.epsilon < 0) fail(path + ".epsilon", "expected a nonnegative rational");
  }
  if (const json* v = find(j, "prime_bound"))
    t.prime_bound = get_int(*v, path + ".prime_bound", 2, 100000);
  if (const json* v = find(j, "successor_stages"))
    t.successor_stages = get_int(*v, path + ".successor_stages", 1, 4096);
  if (const json* v = find(j, "rokhlin_flag")) t.rokhlin_flag = get_bool(*v, path + ".rokhlin_flag");
  if (const json* v = find(j, "infinite_rank"))
    t.infinite_rank = get_bool(*v, path + ".infinite_rank");
  if (const json* v = find(j, "rank")) t.kg_rank = get_int(*v, path + ".rank", 0, 1024);
  if (const json* v = find(j, "torsion")) {
    if (!v->is_array()) fail(path + ".torsion", "expected an array of integers >= 2");
    std::vector<long long> tors;
    for (size_t i = 0; i < v->size(); ++i)
      tors.push_back(get_int((*v)[i], path + ".torsion[" + std::to_string(i) + "]", 2, 1'000'000));
    t.kg_torsion = std::move(tors);
  }
  if (const json* v = find(j, "p_stage")) t.p_stage = get_int(*v, path + ".p_stage", 1, 16);
  if (const json* v = find(j, "p_support")) {
    if (!v->is_array() || v->empty()) fail(path + ".p_support", "expected a nonempty index array");
    t.p_support.clear();
    for (size_t i = 0; i < v->size(); ++i)
      t.p_support.push_back(
          get_int((*v)[i], path + ".p_support[" + std::to_string(i) + "]", 0, kBig));
  }
  if (const json* v = find(j, "a_stage")) t.a_stage = get_int(*v, path + ".a_stage", 0, 16);
  if (const json* v = find(j, "a_matrix")) {
    if (!v->is_array() || v->empty()) fail(path + ".a_matrix", "expected a nonempty square array");
    for (size_t r = 0; r < v->size(); ++r) {
      const json& row = (*v)[r];
      std::string rp = path + ".a_matrix[" + std::to_string(r) + "]";
      if (!row.is_array() || row.size() != v->size())
        fail(rp, "expected a row of length " + std::to_string(v->size()));
      std::vector<std::string> out_row;
      for (size_t cix = 0; cix < row.size(); ++cix) {
        std::string cell = get_str(row[cix], rp + "[" + std::to_string(cix) + "]");
        try {
          rat_parse(cell);
        } catch (const InvalidInput& e) {
          fail(rp + "[" + std::to_string(cix) + "]", e.what());
        }
        out_row.push_back(std::move(cell));
      }
      t.a_matrix.push_back(std::move(out_row));
    }
  }
  return t;
}

// Everything the given task will need must be present in the document, so a
// bad spec dies at parse time with a path instead of mid-computation.
void cross_check(const SpecDocument& d) {
  for (size_t i = 0; i < d.tasks.size(); ++i) {
    const TaskSpec& t = d.tasks[i];
    const std::string path = "$.tasks[" + std::to_string(i) + "]";
    const bool needs_pattern =
        t.command == "analyze" || t.command == "tower" || t.command == "witness";
    if (needs_pattern) {
      if (!d.has_group) fail(path, t.command + " needs a $.group block");
      if (!d.has_sequence) fail(path, t.command + " needs a $.sequence block");
      if (!d.has_pattern) fail(path, t.command + " needs a $.pattern block");
    }
    if (t.command == "tower" || t.command == "witness") {
      if (t.elements.size() != 1)
        fail(path + ".elements", t.command + " takes exactly one element");
    }
    if (!t.elements.empty() && d.has_group) {
      for (size_t e = 0; e < t.elements.size(); ++e)
        if (static_cast<long long>(t.elements[e].size()) != d.group.ngens())
          fail(path + ".elements[" + std::to_string(e) + "]",
               "expected " + std::to_string(d.group.ngens()) + " coordinates for " +
                   d.group.str());
    }
    if (t.command == "witness" && t.level <= t.p_stage)
      fail(path + ".level", "the cutting level must lie beyond p_stage");
    if (t.command == "witness" && t.a_stage > t.level)
      fail(path + ".a_stage", "the element must live at or below the cutting level");
    if (t.command == "induce" && !d.has_induction)
      fail(path, "induce needs an $.induction block");
    if (t.command == "bratteli") {
      if (d.family_kind == SpecDocument::FamilyKind::None)
        fail(path, "bratteli needs a $.family block");
      if (d.family_kind == SpecDocument::FamilyKind::KleinBottle)
        fail(path, "bratteli needs a finite acting group; the klein_bottle family is infinite");
      if (d.family_kind == SpecDocument::FamilyKind::CyclicHom && !d.has_sequence)
        fail(path, "the cyclic_hom family needs a $.sequence block");
      if (d.family_kind == SpecDocument::FamilyKind::Pattern) {
        if (!(d.has_group && d.has_sequence && d.has_pattern))
          fail(path, "the pattern family needs $.group, $.sequence and $.pattern blocks");
        if (d.group.rank != 0)
          fail(path, "bratteli needs a finite acting group; $.group.rank must be 0");
      }
    }
    if (t.command == "kgroups" && !t.kg_rank && !t.infinite_rank && !d.has_group)
      fail(path, "kgroups needs a rank field, infinite_rank, or a $.group block");
  }
  if (d.has_pattern && d.has_group &&
      static_cast<long long>(d.rules.size()) != d.group.ngens())
    fail("$.pattern.rules", "expected one rule per generator (" +
                                std::to_string(d.group.ngens()) + " for " + d.group.str() + ")");
}

}  // namespace

SpecDocument parse_spec_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("$: not valid JSON (") + e.what() + ")");
  }
  need_object(j, "$");
  check_keys(j, "$",
             {"schema", "name", "description", "group", "sequence", "pattern", "family",
              "induction", "divisible", "tasks"});

  SpecDocument d;
  if (const json* v = find(j, "schema")) {
    std::string s = get_str(*v, "$.schema");
    if (s != "qrok-spec/1") fail("$.schema", "expected \"qrok-spec/1\"");
  }
  if (const json* v = find(j, "name")) d.name = get_str(*v, "$.name");
  if (const json* v = find(j, "description")) d.description = get_str(*v, "$.description");

  if (const json* v = find(j, "group")) {
    d.group = parse_group(*v, "$.group");
    d.has_group = true;
  }
  if (const json* v = find(j, "sequence")) {
    d.sequence = parse_sequence(*v, "$.sequence");
    d.has_sequence = true;
  }
  if (const json* v = find(j, "pattern")) {
    need_object(*v, "$.pattern");
    check_keys(*v, "$.pattern", {"rules", "resequence"});
    const json* rules = find(*v, "rules");
    if (!rules) fail("$.pattern.rules", "missing required field");
    if (!rules->is_array() || rules->empty())
      fail("$.pattern.rules", "expected a nonempty array");
    for (size_t i = 0; i < rules->size(); ++i)
      d.rules.push_back(parse_rule((*rules)[i], "$.pattern.rules[" + std::to_string(i) + "]"));
    if (const json* rs = find(*v, "resequence")) d.resequence = get_bool(*rs, "$.pattern.resequence");
    d.has_pattern = true;
  }
  if (const json* v = find(j, "family")) {
    need_object(*v, "$.family");
    check_keys(*v, "$.family", {"kind", "d", "mode", "p"});
    const json* k = find(*v, "kind");
    if (!k) fail("$.family.kind", "missing required field");
    std::string kind = get_str(*k, "$.family.kind");
    if (kind == "cyclic_hom") {
      d.family_kind = SpecDocument::FamilyKind::CyclicHom;
      const json* dd = find(*v, "d");
      if (!dd) fail("$.family.d", "the cyclic_hom family needs the group order d");
      d.cyclic_d = get_int(*dd, "$.family.d", 2, 100000);
      if (const json* m = find(*v, "mode")) {
        std::string mode = get_str(*m, "$.family.mode");
        if (mode == "regular_multiple")
          d.cyclic_mode = CyclicHomFamily::Mode::RegularMultiple;
        else if (mode == "trivial")
          d.cyclic_mode = CyclicHomFamily::Mode::Trivial;
        else
          fail("$.family.mode", "expected \"regular_multiple\" or \"trivial\"");
      }
    } else if (kind == "pattern") {
      d.family_kind = SpecDocument::FamilyKind::Pattern;
    } else if (kind == "klein_bottle") {
      d.family_kind = SpecDocument::FamilyKind::KleinBottle;
      const json* p = find(*v, "p");
      if (!p) fail("$.family.p", "the klein_bottle family needs a prime p");
      d.klein_p = get_prime(*p, "$.family.p");
    } else {
      fail("$.family.kind", "expected one of cyclic_hom, pattern, klein_bottle");
    }
  }
  if (const json* v = find(j, "induction")) {
    need_object(*v, "$.induction");
    check_keys(*v, "$.induction", {"model", "p", "transversal"});
    const json* m = find(*v, "model");
    if (!m) fail("$.induction.model", "missing required field");
    if (get_str(*m, "$.induction.model") != "klein_bottle")
      fail("$.induction.model", "the only shipped induction model is \"klein_bottle\"");
    const json* p = find(*v, "p");
    if (!p) fail("$.induction.p", "missing required field");
    d.induction_p = get_prime(*p, "$.induction.p");
    d.transversal = {"", "b"};
    if (const json* t = find(*v, "transversal")) {
      if (!t->is_array() || t->empty())
        fail("$.induction.transversal", "expected a nonempty array of words");
      d.transversal.clear();
      for (size_t i = 0; i < t->size(); ++i)
        d.transversal.push_back(
            get_str((*t)[i], "$.induction.transversal[" + std::to_string(i) + "]"));
    }
    d.has_induction = true;
  }
  if (const json* v = find(j, "divisible")) {
    need_object(*v, "$.divisible");
    check_keys(*v, "$.divisible", {"p", "truncation"});
    const json* p = find(*v, "p");
    if (!p) fail("$.divisible.p", "missing required field");
    d.divisible_p = get_prime(*p, "$.divisible.p");
    const json* t = find(*v, "truncation");
    if (!t) fail("$.divisible.truncation", "missing required field");
    d.divisible_truncation = get_int(*t, "$.divisible.truncation", 1, 64);
    d.has_divisible = true;
  }
  if (const json* v = find(j, "tasks")) {
    if (!v->is_array()) fail("$.tasks", "expected an array");
    for (size_t i = 0; i < v->size(); ++i)
      d.tasks.push_back(parse_task((*v)[i], "$.tasks[" + std::to_string(i) + "]"));
  }

  cross_check(d);
  return d;
}

EmbeddingPattern SpecDocument::build_pattern() const {
  if (!(has_group && has_sequence && has_pattern))
    throw InvalidInput("pattern construction needs group, sequence and pattern blocks");
  EmbeddingPattern base(group, sequence, rules);
  return resequence ? diagonal_resequence(base) : base;
}

std::unique_ptr<ActionFamily> SpecDocument::build_family() const {
  switch (family_kind) {
    case FamilyKind::CyclicHom:
      if (!has_sequence) throw InvalidInput("the cyclic_hom family needs a sequence block");
      return std::make_unique<CyclicHomFamily>(cyclic_d, sequence, cyclic_mode);
    case FamilyKind::Pattern:
      return std::make_unique<PatternFamily>(build_pattern());
    case FamilyKind::KleinBottle:
      return std::make_unique<KleinBottleFamily>(klein_p);
    case FamilyKind::None:
      break;
  }
  throw InvalidInput("this document has no family block");
}

namespace {

json sequence_json(const FactorSequence& s) {
  json j;
  switch (s.rule()) {
    case FactorSequence::Rule::Linear:
      j["rule"] = "linear";
      break;
    case FactorSequence::Rule::Factorial:
      j["rule"] = "factorial";
      break;
    case FactorSequence::Rule::Constant:
      j["rule"] = "constant";
      j["value"] = s.constant_value();
      break;
    case FactorSequence::Rule::PrimePower:
      j["rule"] = "prime_power";
      j["p"] = s.prime();
      break;
    case FactorSequence::Rule::Table:
      j["rule"] = "table";
      j["entries"] = s.entries();
      break;
  }
  return j;
}

json rule_json(const CoordinateRule& r) {
  json j;
  switch (r.kind) {
    case CoordinateRule::Kind::QuotientMod:
    case CoordinateRule::Kind::FactorialMod:
      j["rule"] = r.kind == CoordinateRule::Kind::QuotientMod ? "quotient_mod" : "factorial_mod";
      j["multiplier"] = to_ll(r.multiplier);
      break;
    case CoordinateRule::Kind::PadicDigits:
      j["rule"] = "padic_digits";
      j["p"] = r.p;
      j["value"] = rat_str(r.value);
      break;
    case CoordinateRule::Kind::Table: {
      j["rule"] = "table";
      std::vector<long long> entries;
      for (const BigInt& e : r.table) entries.push_back(to_ll(e));
      j["entries"] = entries;
      j["zero_beyond"] = r.zero_beyond;
      break;
    }
  }
  return j;
}

json task_json(const TaskSpec& t) {
  json j;
  j["command"] = t.command;
  if (!t.elements.empty()) {
    json els = json::array();
    for (const auto& e : t.elements) {
      json coords = json::array();
      for (const BigInt& c : e) coords.push_back(to_ll(c));
      els.push_back(std::move(coords));
    }
    j["elements"] = std::move(els);
  }
  if (t.command == "analyze") {
    j["horizon"] = t.horizon;
    j["box"] = t.box;
    j["power_bound"] = t.power_bound;
  } else if (t.command == "induce") {
    j["level"] = t.level;
    j["word_len"] = t.word_len;
  } else if (t.command == "tower") {
    j["horizon"] = t.horizon;
    j["test_stage"] = t.test_stage;
    j["epsilon"] = rat_str(t.epsilon);
    j["stage_cap"] = t.stage_cap;
  } else if (t.command == "witness") {
    j["level"] = t.level;
    j["epsilon"] = rat_str(t.epsilon);
    j["p_stage"] = t.p_stage;
    j["p_support"] = t.p_support;
    j["stage_cap"] = t.stage_cap;
    if (t.a_stage > 0) {
      j["a_stage"] = t.a_stage;
      j["a_matrix"] = t.a_matrix;
    }
  } else if (t.command == "bratteli") {
    j["stages"] = t.stages;
  } else if (t.command == "kgroups") {
    j["prime_bound"] = t.prime_bound;
    j["successor_stages"] = t.successor_stages;
    j["rokhlin_flag"] = t.rokhlin_flag;
    if (t.infinite_rank) j["infinite_rank"] = true;
    if (t.kg_rank) j["rank"] = *t.kg_rank;
    if (t.kg_torsion) j["torsion"] = *t.kg_torsion;
  }
  return j;
}

}  // namespace

std::string canonical_spec_json(const SpecDocument& d) {
  json j;
  j["schema"] = "qrok-spec/1";
  if (!d.name.empty()) j["name"] = d.name;
  if (!d.description.empty()) j["description"] = d.description;
  if (d.has_group) {
    j["group"]["rank"] = d.group.rank;
    j["group"]["torsion"] = d.group.torsion;
  }
  if (d.has_sequence) j["sequence"] = sequence_json(d.sequence);
  if (d.has_pattern) {
    json rules = json::array();
    for (const CoordinateRule& r : d.rules) rules.push_back(rule_json(r));
    j["pattern"]["rules"] = std::move(rules);
    if (d.resequence) j["pattern"]["resequence"] = true;
  }
  switch (d.family_kind) {
    case SpecDocument::FamilyKind::CyclicHom:
      j["family"]["kind"] = "cyclic_hom";
      j["family"]["d"] = d.cyclic_d;
      j["family"]["mode"] = d.cyclic_mode == CyclicHomFamily::Mode::RegularMultiple
                                ? "regular_multiple"
                                : "trivial";
      break;
    case SpecDocument::FamilyKind::Pattern:
      j["family"]["kind"] = "pattern";
      break;
    case SpecDocument::FamilyKind::KleinBottle:
      j["family"]["kind"] = "klein_bottle";
      j["family"]["p"] = d.klein_p;
      break;
    case SpecDocument::FamilyKind::None:
      break;
  }
  if (d.has_induction) {
    j["induction"]["model"] = "klein_bottle";
    j["induction"]["p"] = d.induction_p;
    j["induction"]["transversal"] = d.transversal;
  }
  if (d.has_divisible) {
    j["divisible"]["p"] = d.divisible_p;
    j["divisible"]["truncation"] = d.divisible_truncation;
  }
  if (!d.tasks.empty()) {
    json tasks = json::array();
    for (const TaskSpec& t : d.tasks) tasks.push_back(task_json(t));
    j["tasks"] = std::move(tasks);
  }
  return j.dump(2);
}

namespace {

const char* kFreeAbelianSpec = R"json({
  "schema": "qrok-spec/1",
  "name": "free-abelian",
  "description": "Z embedded by factorial multiples: the factorial certificate proves trivial intersection and uniform outerness of every nonzero power.",
  "group": {"rank": 1, "torsion": []},
  "sequence": {"rule": "factorial"},
  "pattern": {"rules": [{"rule": "factorial_mod", "multiplier": 1}]},
  "tasks": [
    {"command": "analyze", "elements": [[1]], "horizon": 12, "box": 10, "power_bound": 10}
  ]
})json";

const char* kKleinBottleSpec = R"json({
  "schema": "qrok-spec/1",
  "name": "klein-bottle",
  "description": "Klein bottle group induced from its index-2 free abelian subgroup acting on (Z/p^l)^2 by coordinate translations.",
  "induction": {"model": "klein_bottle", "p": 3, "transversal": ["", "b"]},
  "tasks": [
    {"command": "induce", "level": 1, "word_len": 4}
  ]
})json";

const char* kFiniteRokhlinSpec = R"json({
  "schema": "qrok-spec/1",
  "name": "finite-rokhlin",
  "description": "Z/2 acting through the regular multiple wherever the level order is even; along the linear sequence the crossed product telescopes to the universal UHF algebra.",
  "family": {"kind": "cyclic_hom", "d": 2, "mode": "regular_multiple"},
  "sequence": {"rule": "linear"},
  "tasks": [
    {"command": "bratteli", "stages": 8}
  ]
})json";

const char* kPruferNegativeSpec = R"json({
  "schema": "qrok-spec/1",
  "name": "prufer-negative",
  "description": "Z/256 stands in for the 2-divisible tower: against a sequence of bounded 2-valuation the element 128 dies at every level, certifying the counterexample.",
  "group": {"rank": 0, "torsion": [256]},
  "sequence": {"rule": "constant", "value": 128},
  "pattern": {"rules": [{"rule": "quotient_mod", "multiplier": 1}]},
  "divisible": {"p": 2, "truncation": 8},
  "tasks": [
    {"command": "analyze", "elements": [[128]], "horizon": 12, "box": 256, "power_bound": 4}
  ]
})json";

}  // namespace

const std::vector<std::pair<std::string, std::string>>& builtin_specs() {
  static const std::vector<std::pair<std::string, std::string>> kSpecs = {
      {"free-abelian", kFreeAbelianSpec},
      {"klein-bottle", kKleinBottleSpec},
      {"finite-rokhlin", kFiniteRokhlinSpec},
      {"prufer-negative", kPruferNegativeSpec},
  };
  return kSpecs;
}

SpecDocument load_spec(const std::string& path_or_builtin) {
  if (path_or_builtin.rfind("builtin:", 0) == 0) {
    std::string name = path_or_builtin.substr(8);
    for (const auto& [n, text] : builtin_specs())
      if (n == name) return parse_spec_text(text);
    std::string names;
    for (const auto& [n, text] : builtin_specs()) names += (names.empty() ? "" : ", ") + n;
    throw SchemaError("$: unknown builtin \"" + name + "\" (shipped: " + names + ")");
  }
  std::ifstream in(path_or_builtin, std::ios::binary);
  if (!in) throw SchemaError("$: cannot open spec file " + path_or_builtin);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

}  // namespace qrok
