#include <qrok/bratteli.hpp>
#include <qrok/direct_limit.hpp>
#include <qrok/driver.hpp>
#include <qrok/kinv.hpp>
#include <qrok/rokhlin.hpp>

#include <json.hpp>

#include <chrono>

namespace qrok {

using json = nlohmann::json;

namespace {

json coords_json(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const BigInt& c : v) a.push_back(to_ll(c));
  return a;
}

json element_json(const GroupElement& e) {
  json a = json::array();
  for (const BigInt& c : e.free) a.push_back(to_ll(c));
  for (const BigInt& c : e.tors) a.push_back(to_ll(c));
  return a;
}

// Exact value first; the binary64 rendering is a convenience, never the
// certificate.
json rational_json(const Rational& q) {
  json j;
  j["exact"] = rat_str(q);
  j["binary64"] = rat_to_double(q);
  return j;
}

std::vector<long long> diagonal_support(const StageElement& p) {
  std::vector<long long> out;
  for (long long i = 0; i < p.dim(); ++i)
    if (p.matrix().at(i, i) != 0) out.push_back(i);
  return out;
}

long long validated_horizon(long long horizon) { return horizon < 16 ? horizon : 16; }

// ---------------------------------------------------------------------------

std::pair<TaskVerdict, json> run_analyze(const SpecDocument& doc, const TaskSpec& t) {
  EmbeddingPattern pat = doc.build_pattern();
  pat.validate(validated_horizon(t.horizon));

  TaskVerdict v = TaskVerdict::Pass;
  json detail;

  TrivialIntersectionVerdict ti = trivial_intersection(pat, t.horizon, t.box);
  json tij;
  switch (ti.kind) {
    case TrivialIntersectionVerdict::Kind::ProvenTrivial:
      tij["kind"] = "ProvenTrivial";
      break;
    case TrivialIntersectionVerdict::Kind::Counterexample:
      tij["kind"] = "Counterexample";
      v = worse(v, TaskVerdict::CertifiedFailure);
      break;
    case TrivialIntersectionVerdict::Kind::UnknownUpTo:
      tij["kind"] = "UnknownUpTo";
      v = worse(v, TaskVerdict::Unknown);
      break;
  }
  tij["certificate"] = ti.certificate;
  tij["horizon"] = ti.horizon;
  tij["box"] = ti.box_bound;
  if (ti.witness) {
    tij["witness"] = element_json(*ti.witness);
    tij["vanish_from"] = ti.vanish_from;
  }
  detail["trivial_intersection"] = std::move(tij);

  std::vector<std::vector<BigInt>> els = t.elements;
  if (els.empty())
    for (long long i = 0; i < doc.group.ngens(); ++i) {
      std::vector<BigInt> unit(static_cast<size_t>(doc.group.ngens()), BigInt(0));
      unit[static_cast<size_t>(i)] = 1;
      els.push_back(std::move(unit));
    }
  json ej = json::array();
  for (const auto& coords : els) {
    GroupElement g = element(doc.group, coords);
    RokhlinClassification rc = rokhlin_classify(pat, g, t.horizon, t.power_bound);
    json cj;
    cj["element"] = coords_json(coords);
    switch (rc.kind) {
      case RokhlinClassification::Kind::FiniteOrderRokhlin:
        cj["kind"] = "FiniteOrderRokhlin";
        cj["order"] = rc.order;
        break;
      case RokhlinClassification::Kind::InfiniteOrderUniformlyOuter:
        cj["kind"] = "InfiniteOrderUniformlyOuter";
        break;
      case RokhlinClassification::Kind::Fails:
        cj["kind"] = "Fails";
        v = worse(v, TaskVerdict::CertifiedFailure);
        break;
      case RokhlinClassification::Kind::Undetermined:
        cj["kind"] = "Undetermined";
        v = worse(v, TaskVerdict::Unknown);
        break;
    }
    cj["certificate"] = rc.certificate;
    json ev = json::array();
    for (const auto& e : rc.evidence) {
      json x;
      x["j"] = e.j;
      x["note"] = e.note;
      ev.push_back(std::move(x));
    }
    cj["evidence"] = std::move(ev);
    ej.push_back(std::move(cj));
  }
  detail["elements"] = std::move(ej);

  if (doc.has_divisible) {
    DivisibleObstruction ob =
        divisible_obstruction(doc.divisible_p, doc.divisible_truncation, doc.sequence, t.horizon);
    json oj;
    oj["p"] = ob.p;
    oj["truncation"] = ob.truncation;
    oj["forced_zero_levels"] = ob.forced_zero_levels;
    oj["all_levels_forced"] = ob.all_levels_forced;
    oj["forced_forever"] = ob.forced_forever;
    oj["certificate"] = ob.certificate;
    detail["divisible_obstruction"] = std::move(oj);
  }
  return {v, std::move(detail)};
}

std::pair<TaskVerdict, json> run_induce(const SpecDocument& doc, const TaskSpec& t) {
  KleinBottleModel model;
  std::vector<Word> reps;
  for (const std::string& s : doc.transversal)
    reps.push_back(parse_word(s, model.presentation().generators));
  SubgroupTransversal tr = make_transversal(model, reps);
  KleinBottleFamily fam(doc.induction_p);
  PermutationAction h_act = fam.level_action(t.level);
  PermutationAction g_act = induce(model, tr, h_act);

  json detail;
  detail["model"] = "klein_bottle";
  detail["p"] = doc.induction_p;
  detail["level"] = t.level;
  detail["cosets"] = tr.count();
  detail["h_points"] = h_act.points();
  detail["points"] = g_act.points();
  detail["relators_hold"] = true;  // induce() refuses to return otherwise

  json words_j = json::array();
  for (const Word& w : enumerate_words(2, t.word_len)) {
    long long fp = g_act.fixed_points(w);
    long long via = induced_fixed_points_via_trace(model, tr, h_act, w);
    if (fp != via)
      throw Inconsistency("direct and trace-set fixed point counts disagree on " +
                          word_str(w, model.presentation().generators));
    json wj;
    wj["word"] = word_str(w, model.presentation().generators);
    wj["fixed_points"] = fp;
    if (fp == g_act.points()) wj["acts_trivially"] = true;
    words_j.push_back(std::move(wj));
  }
  detail["words"] = std::move(words_j);
  detail["cross_check"] = "trace-set route agrees with the materialized action on every word";
  return {TaskVerdict::Pass, std::move(detail)};
}

std::pair<TaskVerdict, json> run_tower(const SpecDocument& doc, const TaskSpec& t) {
  if (t.elements.empty()) throw InvalidInput("tower needs one element listed in the task");
  EmbeddingPattern pat = doc.build_pattern();
  pat.validate(validated_horizon(t.horizon));
  GroupElement g = element(doc.group, t.elements[0]);

  std::vector<StageElement> tests;
  if (t.test_stage > 0) {
    std::vector<long long> dims = stage_dims(doc.sequence, t.test_stage, t.stage_cap);
    tests.push_back(StageElement::identity(dims));
    long long dim = 1;
    for (long long d : dims) dim *= d;
    std::vector<long long> half;
    for (long long i = 0; i < (dim + 1) / 2; ++i) half.push_back(i);
    tests.push_back(StageElement::diagonal_projection(dims, half));
  }

  json detail;
  detail["element"] = coords_json(t.elements[0]);
  try {
    RokhlinTower tw = tower_synthesize(pat, g, tests, t.horizon, t.stage_cap);
    TowerCheck chk = tower_verify(tw, pat, g, tests, t.epsilon);
    detail["order"] = tw.k;
    detail["prefix_stage"] = tw.prefix_stage;
    detail["levels"] = tw.levels;
    detail["dims"] = tw.dims;
    detail["construction"] = tw.construction;
    json pj = json::array();
    for (const StageElement& p : tw.projections) pj.push_back(diagonal_support(p));
    detail["projections"] = std::move(pj);
    json cj;
    cj["pass"] = chk.pass;
    cj["exact"] = chk.exact;
    cj["epsilon"] = rat_str(chk.epsilon);
    cj["sum_defect"] = rational_json(chk.sum_defect);
    cj["shift_defect"] = rational_json(chk.shift_defect);
    json comm = json::array();
    for (const Rational& d : chk.commutator_defects) comm.push_back(rational_json(d));
    cj["commutator_defects"] = std::move(comm);
    detail["check"] = std::move(cj);
    return {chk.pass ? TaskVerdict::Pass : TaskVerdict::CertifiedFailure, std::move(detail)};
  } catch (const CertificateFailure& e) {
    detail["synthesis_failed"] = e.what();
    // A constant sequence repeats one level shape forever, so an order
    // missing inside the horizon is missing at every level; any other rule
    // or table may still deliver beyond the horizon.
    bool forever = doc.sequence.rule() == FactorSequence::Rule::Constant;
    detail["beyond_horizon"] = !forever;
    return {forever ? TaskVerdict::CertifiedFailure : TaskVerdict::Unknown, std::move(detail)};
  }
}

std::pair<TaskVerdict, json> run_witness(const SpecDocument& doc, const TaskSpec& t) {
  if (t.elements.empty()) throw InvalidInput("witness needs one element listed in the task");
  EmbeddingPattern pat = doc.build_pattern();
  pat.validate(validated_horizon(t.level));
  GroupElement g = element(doc.group, t.elements[0]);

  std::vector<long long> pdims = stage_dims(doc.sequence, t.p_stage, t.stage_cap);
  StageElement p = StageElement::diagonal_projection(pdims, t.p_support);
  StageElement a = p;
  if (t.a_stage > 0) {
    std::vector<long long> adims = stage_dims(doc.sequence, t.a_stage, t.stage_cap);
    long long dim = 1;
    for (long long d : adims) dim *= d;
    if (static_cast<long long>(t.a_matrix.size()) != dim)
      throw InvalidInput("a_matrix has " + std::to_string(t.a_matrix.size()) +
                         " rows but stage " + std::to_string(t.a_stage) + " has dimension " +
                         std::to_string(dim));
    RatMat m(dim, dim);
    for (long long r = 0; r < dim; ++r)
      for (long long c = 0; c < dim; ++c)
        m.at(r, c) = rat_parse(t.a_matrix[static_cast<size_t>(r)][static_cast<size_t>(c)]);
    a = StageElement(adims, std::move(m));
  }

  OuternessWitness w = outerness_witness(pat, g, a, p, t.epsilon, t.level, t.stage_cap);
  json detail;
  detail["element"] = coords_json(t.elements[0]);
  detail["level"] = w.level;
  detail["k"] = w.k;
  detail["epsilon"] = rat_str(t.epsilon);
  detail["certified"] = rat_str(w.certified);
  detail["staging_defect"] = rational_json(w.staging_defect);
  json ach = json::array();
  for (const Rational& r : w.achieved) ach.push_back(rational_json(r));
  detail["achieved"] = std::move(ach);
  detail["achieved_max"] = rational_json(w.achieved_max);
  detail["exact_zero"] = w.exact_zero;
  detail["within_contract"] = w.within_contract;
  json pj = json::array();
  for (const StageElement& q : w.projections) pj.push_back(diagonal_support(q));
  detail["projections"] = std::move(pj);
  return {w.within_contract ? TaskVerdict::Pass : TaskVerdict::CertifiedFailure,
          std::move(detail)};
}

std::pair<TaskVerdict, json> run_bratteli(const SpecDocument& doc, const TaskSpec& t) {
  std::unique_ptr<ActionFamily> fam = doc.build_family();
  CrossedProductAnalysis ana = analyze_crossed_product(*fam, t.stages);
  json detail;
  TaskVerdict v = TaskVerdict::Pass;
  switch (ana.verdict) {
    case CrossedProductAnalysis::Verdict::UHF:
      detail["verdict"] = "UHF";
      detail["supernatural"] = ana.supernatural.str();
      detail["universal"] = ana.supernatural.universal;
      detail["complete"] = ana.supernatural.complete;
      break;
    case CrossedProductAnalysis::Verdict::NotUHF:
      detail["verdict"] = "NotUHF";
      v = TaskVerdict::CertifiedFailure;
      break;
    case CrossedProductAnalysis::Verdict::Undetermined:
      detail["verdict"] = "Undetermined";
      v = TaskVerdict::Unknown;
      break;
  }
  detail["reason"] = ana.reason;
  detail["cuts"] = ana.cuts;

  json dj;
  dj["labels"] = ana.diagram.labels;
  json sizes = json::array();
  for (const auto& stage : ana.diagram.sizes) {
    json row = json::array();
    for (const BigInt& s : stage) row.push_back(int_str(s));
    sizes.push_back(std::move(row));
  }
  dj["sizes"] = std::move(sizes);
  json steps = json::array();
  for (const IntMat& m : ana.diagram.steps) {
    json mj = json::array();
    for (long long r = 0; r < m.rows; ++r) {
      json row = json::array();
      for (long long c = 0; c < m.cols; ++c) row.push_back(to_ll(m.at(r, c)));
      mj.push_back(std::move(row));
    }
    steps.push_back(std::move(mj));
  }
  dj["steps"] = std::move(steps);
  dj["text"] = ana.diagram.to_text();
  detail["diagram"] = std::move(dj);
  return {v, std::move(detail)};
}

std::pair<TaskVerdict, json> run_kgroups(const SpecDocument& doc, const TaskSpec& t) {
  KInvariants k = [&] {
    if (t.infinite_rank) return k_invariants_infinite_rank(t.rokhlin_flag);
    FgAbelianGroup g;
    if (t.kg_rank) {
      g.rank = *t.kg_rank;
      if (t.kg_torsion) g.torsion = *t.kg_torsion;
    } else {
      g = doc.group;
    }
    return k_invariants(g, t.rokhlin_flag);
  }();

  json detail;
  json kj;
  if (k.ranks) {
    kj["k0_rank"] = int_str(k.ranks->first);
    kj["k1_rank"] = int_str(k.ranks->second);
  } else {
    kj["k0_rank"] = "countably-infinite";
    kj["k1_rank"] = "countably-infinite";
  }
  kj["order"] = k.order;
  kj["hypothesis_flag"] = k.hypothesis_flag;
  kj["note"] = k.note;
  detail["k_invariants"] = std::move(kj);

  DirectLimitInvariants dl = direct_limit_invariants(
      DirectLimitSystem::scalar_successor(t.successor_stages), t.prime_bound);
  json dj;
  dj["system"] = "successor";
  dj["rank"] = dl.rank;
  dj["stabilized_at"] = dl.stabilized_at;
  json pj = json::array();
  for (const PrimeDivisibility& c : dl.primes) {
    json x;
    x["p"] = to_ll(c.p);
    x["divides"] = c.divides;
    x["how"] = c.how;
    pj.push_back(std::move(x));
  }
  dj["primes"] = std::move(pj);
  detail["direct_limit"] = std::move(dj);
  return {TaskVerdict::Pass, std::move(detail)};
}

std::pair<TaskVerdict, json> run_task(const SpecDocument& doc, const TaskSpec& t) {
  try {
    if (t.command == "analyze") return run_analyze(doc, t);
    if (t.command == "induce") return run_induce(doc, t);
    if (t.command == "tower") return run_tower(doc, t);
    if (t.command == "witness") return run_witness(doc, t);
    if (t.command == "bratteli") return run_bratteli(doc, t);
    if (t.command == "kgroups") return run_kgroups(doc, t);
  } catch (const CertificateFailure& e) {
    // A certified mathematical failure belongs in the report, not on stderr.
    json detail;
    detail["certificate_failure"] = e.what();
    return {TaskVerdict::CertifiedFailure, std::move(detail)};
  }
  throw SchemaError("$: unknown command \"" + t.command + "\"");
}

}  // namespace

ReportDocument run_driver(const std::string& command, const SpecDocument& spec_in,
                          const DriverOptions& opts) {
  const bool known = command == "analyze" || command == "induce" || command == "tower" ||
                     command == "witness" || command == "bratteli" || command == "kgroups" ||
                     command == "report";
  if (!known) throw SchemaError("$: unknown command \"" + command + "\"");
  if (opts.epsilon && *opts.epsilon < 0)
    throw SchemaError("--epsilon: expected a nonnegative rational");

  SpecDocument spec = spec_in;
  for (TaskSpec& t : spec.tasks) {
    if (opts.horizon) t.horizon = *opts.horizon;
    if (opts.epsilon) t.epsilon = *opts.epsilon;
    if (opts.stage_cap) t.stage_cap = *opts.stage_cap;
    if (opts.word_len) t.word_len = *opts.word_len;
  }

  std::vector<TaskSpec> todo;
  if (command == "report") {
    todo = spec.tasks;
  } else {
    for (const TaskSpec& t : spec.tasks)
      if (t.command == command) todo.push_back(t);
    if (todo.empty()) {
      TaskSpec t;
      t.command = command;
      if (opts.horizon) t.horizon = *opts.horizon;
      if (opts.epsilon) t.epsilon = *opts.epsilon;
      if (opts.stage_cap) t.stage_cap = *opts.stage_cap;
      if (opts.word_len) t.word_len = *opts.word_len;
      todo.push_back(std::move(t));
    }
  }

  ReportDocument rep;
  rep.command = command;
  rep.spec = spec;
  rep.timing = opts.timing;
  for (const TaskSpec& t : todo) {
    auto start = std::chrono::steady_clock::now();
    auto [v, detail] = run_task(spec, t);
    std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
    TaskOutcome out;
    out.command = t.command;
    out.verdict = v;
    out.detail_json = detail.dump();
    out.seconds = el.count();
    rep.tasks.push_back(std::move(out));
    rep.verdict = worse(rep.verdict, v);
  }
  return rep;
}

}  // namespace qrok
