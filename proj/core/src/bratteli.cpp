#include <qrok/bratteli.hpp>

#include <sstream>

namespace qrok {

namespace {

std::string coord_str(const std::vector<BigInt>& h) {
  std::string s = "(";
  for (size_t i = 0; i < h.size(); ++i) {
    if (i) s += ",";
    s += int_str(h[i]);
  }
  return s + ")";
}

}  // namespace

std::string BratteliDiagram::to_text() const {
  std::ostringstream os;
  os << "characters:";
  for (const auto& l : labels) os << ' ' << l;
  os << '\n';
  for (size_t m = 0; m < sizes.size(); ++m) {
    os << "stage " << m << " sizes:";
    for (const auto& s : sizes[m]) os << ' ' << int_str(s);
    os << '\n';
    if (m < steps.size()) {
      os << "step " << (m + 1) << ":\n";
      const IntMat& M = steps[m];
      for (long long r = 0; r < M.rows; ++r) {
        os << " ";
        for (long long c = 0; c < M.cols; ++c) os << ' ' << int_str(M.at(r, c));
        os << '\n';
      }
    }
  }
  return os.str();
}

BratteliDiagram crossed_product_diagram(const ActionFamily& fam, long long stages) {
  auto torsion = fam.h_torsion();
  if (!torsion)
    throw InvalidInput("stagewise crossed-product data needs a finite abelian acting group");
  if (stages < 1) throw InvalidInput("need at least one stage");
  if (auto cap = fam.levels(); cap && stages > *cap) stages = *cap;

  CharacterTable table(*torsion);
  const long long n = table.count();
  BratteliDiagram d;
  d.labels.reserve(static_cast<size_t>(n));
  for (long long i = 0; i < n; ++i) d.labels.push_back(table.label(i));
  d.sizes.emplace_back(static_cast<size_t>(n), BigInt(1));
  for (long long l = 1; l <= stages; ++l) {
    IntMat M = bratteli_step(table, fam.level_action(l));
    const auto& prev = d.sizes.back();
    std::vector<BigInt> next(static_cast<size_t>(n), BigInt(0));
    for (long long r = 0; r < n; ++r)
      for (long long c = 0; c < n; ++c)
        next[static_cast<size_t>(r)] += M.at(r, c) * prev[static_cast<size_t>(c)];
    d.steps.push_back(std::move(M));
    d.sizes.push_back(std::move(next));
  }
  return d;
}

CrossedProductAnalysis analyze_crossed_product(const ActionFamily& fam, long long stages) {
  CrossedProductAnalysis out;
  out.diagram = crossed_product_diagram(fam, stages);
  const long long n = static_cast<long long>(out.diagram.labels.size());
  const long long inspected = static_cast<long long>(out.diagram.steps.size());

  // Telescope greedily: compose steps until the window matrix is flat, which
  // happens exactly when every nontrivial element has a fixed-point free
  // level inside the window, then cut and start a fresh window. Each step is
  // a dual-group circulant, so flatness is the vanishing of all nontrivial
  // Fourier coefficients of the composed window.
  IntMat window = IntMat::identity(n);
  for (long long m = 0; m < inspected; ++m) {
    window = out.diagram.steps[static_cast<size_t>(m)] * window;
    bool flat = true;
    for (size_t i = 1; i < window.a.size() && flat; ++i) flat = window.a[i] == window.a[0];
    if (flat) {
      out.cuts.push_back(m + 1);
      window = IntMat::identity(n);
    }
  }

  // The verdict rests on per-element tail certificates, not on the finitely
  // many windows composed above; those only locate the cut points.
  CharacterTable table(*fam.h_torsion());
  bool unknown = false;
  std::string unknown_who;
  for (const auto& h : table.elements()) {
    if (fam.element_is_identity(h)) continue;
    auto f = fam.freeness_tail(h);
    using K = ActionFamily::Freeness::Kind;
    if (f.kind == K::NeverFreeBeyond) {
      out.verdict = CrossedProductAnalysis::Verdict::NotUHF;
      out.reason = "element " + coord_str(h) + " keeps fixed points at every level beyond " +
                   std::to_string(f.from) + " (" + f.reason +
                   "), so windows past that point never close";
      if (auto nm = fam.never_mixes()) out.reason += "; " + *nm;
      return out;
    }
    if (f.kind == K::Unknown && !unknown) {
      unknown = true;
      unknown_who = coord_str(h) + " (" + f.reason + ")";
    }
  }
  if (unknown) {
    out.verdict = CrossedProductAnalysis::Verdict::Undetermined;
    out.reason = "no tail certificate for element " + unknown_who + "; " +
                 std::to_string(out.cuts.size()) + " flat window(s) observed within " +
                 std::to_string(inspected) + " inspected stage(s)";
    return out;
  }
  out.verdict = CrossedProductAnalysis::Verdict::UHF;
  out.supernatural = fam.accumulated_supernatural(stages);
  out.reason =
      "every nontrivial element is eventually or cofinally fixed-point free, so telescope "
      "windows keep closing and the limit is a matroid algebra of the accumulated type";
  if (auto mr = fam.mixing_recurrence()) out.reason += "; " + *mr;
  return out;
}

}  // namespace qrok
