// bihom: command-line front end.
//
// Exit codes: 0 pass, 1 falsified (axiom violation, failed hypothesis,
// failed cross-check), 2 malformed input or usage error.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "bihom/corpus.hpp"
#include "bihom/report.hpp"

namespace fs = std::filesystem;
using namespace bihom;

namespace {

struct Options {
  std::string format = "text";
  std::string out;
  std::size_t max_violations = max_violations_from_env();
  bool project_graded = false;
  std::uint64_t seed = 1;
};

struct Outcome {
  bool pass = true;
  json report = json::object();
  std::string text;
};

class Run {
 public:
  Run(std::string command, const Options& o) : command_(std::move(command)), opt_(o), start_(clock::now()) {}

  /// Registers an input file for the digest.
  void input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    digest_ = fnv1a64(ss.str(), digest_);
  }

  int finish(const Outcome& o) const {
    const auto ms = std::chrono::duration<double, std::milli>(clock::now() - start_).count();
    std::string body;
    if (opt_.format == "json") {
      json j;
      j["command"] = command_;
      j["input_digest"] = hex64(digest_);
      j["seed"] = opt_.seed;
      j["status"] = o.pass ? "pass" : "fail";
      for (auto it = o.report.begin(); it != o.report.end(); ++it) j[it.key()] = it.value();
      j["elapsed_ms"] = ms;
      body = j.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << "command: " << command_ << "\n"
         << "input digest: " << hex64(digest_) << "\n"
         << "seed: " << opt_.seed << "\n"
         << o.text << "status: " << (o.pass ? "pass" : "fail") << "\n"
         << "elapsed: " << ms << " ms\n";
      body = os.str();
    }
    if (opt_.out.empty()) std::cout << body;
    else write_text_atomic(opt_.out, body);
    return o.pass ? 0 : 1;
  }

 private:
  using clock = std::chrono::steady_clock;
  std::string command_;
  const Options& opt_;
  std::uint64_t digest_ = 0xcbf29ce484222325ULL;
  clock::time_point start_;
};

template <Field K>
void require_same_field(const K& f, const json& j, const std::string& what) {
  if (!j.contains("field")) return;
  auto g = field_from_json(j);
  bool same = std::visit(
      [&](const auto& h) {
        using H = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<H, K>) {
          if constexpr (std::is_same_v<K, PrimeField>) return h.p == f.p;
          return true;
        }
        return false;
      },
      g);
  if (!same) throw SchemaError(what, "field does not match the instance");
}

template <Field K>
Matrix<K> load_map(const K& f, const std::string& path, std::size_t cols, std::size_t rows) {
  auto j = read_json(path);
  require_same_field(f, j, path);
  return map_from_json(f, j, cols, rows);
}

template <Field K>
std::vector<Vec<K>> load_vectors(const K& f, const std::string& path, std::size_t dim) {
  auto j = read_json(path);
  require_same_field(f, j, path);
  return vectors_from_json(f, j, dim);
}

template <Field K>
Vec<K> parse_vector(const K& f, const std::string& csv, std::size_t dim) {
  Vec<K> v;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      v.push_back(f.parse(item));
    } catch (const ParseError& e) {
      throw SchemaError("--r", e.what());
    }
  }
  if (v.size() != dim)
    throw SchemaError("--r", "expected " + std::to_string(dim) + " entries, got " + std::to_string(v.size()));
  return v;
}

/// Loads a dialgebra instance and calls fn(field, instance).
template <class Fn>
Outcome with_dialgebra(const std::string& path, const Options& o, Fn fn) {
  auto j = read_json(path);
  return visit_field(j, [&](const auto& f) {
    auto h = dialgebra_from_json(f, j);
    if (o.project_graded) project_graded(h);
    return fn(f, h);
  });
}

template <Field K>
std::string first_lines(const ViolationReport<K>& r) {
  return violations_to_text(r);
}

template <Field K>
void attach_instance(Outcome& out, const DialgebraInstance<K>& h, const std::string& save) {
  auto j = to_json(h);
  out.report["output_digest"] = hex64(fnv1a64(j.dump()));
  if (!save.empty()) {
    write_json(save, j);
    out.report["output"] = save;
    out.text += "output: " + save + "\n";
  } else {
    out.report["instance"] = j;
    out.text += j.dump(2) + "\n";
  }
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string path;
  std::string which = "bihom";
};

Outcome cmd_check(const CheckArgs& a, const Options& o) {
  auto j = read_json(a.path);
  auto kind = document_kind(j);
  return visit_field(j, [&](const auto& f) -> Outcome {
    using K = std::decay_t<decltype(f)>;
    Outcome out;
    out.report["which"] = a.which;
    GradingReport g;
    ViolationReport<K> r;
    if (a.which == "bihom-assoc") {
      if (kind == DocumentKind::Dialgebra) throw SchemaError("prod", "bihom-assoc expects a superalgebra instance");
      auto s = superalgebra_from_json(f, j, kind == DocumentKind::Differential);
      if (o.project_graded) project_graded(s);
      g = check_grading(s);
      r = check_bihom_assoc_superalgebra(s, o.max_violations);
    } else {
      if (kind != DocumentKind::Dialgebra) throw SchemaError("left", a.which + " expects a dialgebra instance");
      auto h = dialgebra_from_json(f, j);
      if (o.project_graded) project_graded(h);
      g = check_grading(h);
      if (a.which == "superdialgebra") r = check_superdialgebra(h, o.max_violations);
      else if (a.which == "hom") r = check_hom_superdialgebra(h, o.max_violations);
      else if (a.which == "bihom") r = check_bihom_superdialgebra(h, o.max_violations);
      else if (a.which == "multiplicative") r = check_multiplicative(h, o.max_violations).report;
      else if (a.which == "regular") {
        out.pass = check_regular(h);
        out.report["regular"] = out.pass;
        out.text = std::string("regular: ") + (out.pass ? "yes" : "no") + "\n";
      }
    }
    const bool graded = g.tensors.empty() && g.maps.empty();
    out.report["grading"] = grading_to_json(g);
    out.text += std::string("grading: ") + (graded ? "ok" : std::to_string(g.tensors.size() + g.maps.size()) + " violations") + "\n";
    for (const auto& v : g.tensors)
      out.text += "  " + v.tensor + "(" + std::to_string(v.i) + "," + std::to_string(v.j) + "," + std::to_string(v.k) + ")\n";
    for (const auto& v : g.maps) out.text += "  " + v.map + "(" + std::to_string(v.row) + "," + std::to_string(v.col) + ")\n";
    if (a.which != "grading" && a.which != "regular") {
      out.report["axioms"] = violations_to_json(r);
      out.text += first_lines(r);
      out.pass = r.empty();
    }
    out.pass = out.pass && graded;
    return out;
  });
}

struct TwistArgs {
  std::string path;
  std::string alpha_prime, epsilon_prime, hom_to_bihom;
  std::optional<int> power;
  bool untwist = false;
  bool from_superdialgebra = false;
  bool verify = false;
  std::string save;
};

Outcome cmd_twist(const TwistArgs& a, const Options& o) {
  return with_dialgebra(a.path, o, [&](const auto& f, const auto& h) -> Outcome {
    using K = std::decay_t<decltype(f)>;
    const auto n = h.dim();
    const int modes = (a.power.has_value()) + a.untwist + (!a.hom_to_bihom.empty()) + a.from_superdialgebra;
    if (modes > 1) throw CLI::ValidationError("twist", "choose one of --power, --untwist, --hom-to-bihom, --from-superdialgebra");
    Outcome out;
    DialgebraInstance<K> res;
    std::string mode;
    bool target_superdialgebra = false;
    auto maps = [&]() {
      if (a.alpha_prime.empty() || a.epsilon_prime.empty())
        throw CLI::ValidationError("twist", "--alpha-prime and --epsilon-prime are both required");
      return std::pair{load_map(f, a.alpha_prime, n, n), load_map(f, a.epsilon_prime, n, n)};
    };
    if (a.power) {
      mode = "power";
      res = power_twist(h, *a.power);
    } else if (a.untwist) {
      mode = "untwist";
      res = untwist_regular(h);
      target_superdialgebra = true;
    } else if (!a.hom_to_bihom.empty()) {
      mode = "hom-to-bihom";
      res = hom_to_bihom(h, load_map(f, a.hom_to_bihom, n, n));
    } else if (a.from_superdialgebra) {
      mode = "from-superdialgebra";
      auto [x, y] = maps();
      res = superdialgebra_to_bihom(h, x, y);
    } else {
      mode = "yau";
      auto [x, y] = maps();
      res = yau_twist(h, x, y);
    }
    out.report["mode"] = mode;
    out.text = "mode: " + mode + "\n";
    if (a.verify) {
      auto r = target_superdialgebra ? check_superdialgebra(res, o.max_violations)
                                     : check_bihom_superdialgebra(res, o.max_violations);
      out.report["verify"] = violations_to_json(r);
      out.text += "verify:\n" + violations_to_text(r);
      out.pass = r.empty();
    }
    attach_instance(out, res, a.save);
    return out;
  });
}

struct DerivArgs {
  std::string path;
  int m = 0, n = 0, parity = 0;
  std::vector<std::string> generalized;
  bool quasi = false;
  bool oracle = false;
  std::string convention = "standard";
  std::string save;
};

Outcome cmd_derivations(const DerivArgs& a, const Options& o) {
  return with_dialgebra(a.path, o, [&](const auto& f, const auto& h) -> Outcome {
    using K = std::decay_t<decltype(f)>;
    const auto conv = convention_from_string(a.convention);
    Outcome out;
    out.report["signature"] = {{"m", a.m}, {"n", a.n}, {"parity", a.parity}};
    out.report["convention"] = a.convention;
    out.text = "signature: m=" + std::to_string(a.m) + " n=" + std::to_string(a.n) + " parity=" + std::to_string(a.parity) +
               "\nconvention: " + a.convention + "\n";
    if ((a.m < 0 || a.n < 0) && !check_regular(h))
      throw PreconditionError("negative exponents require a regular instance", "");
    json artifact;
    if (a.quasi) {
      auto q = solve_quasi(h, a.m, a.n, a.parity, conv);
      artifact = quasi_to_json(f, h.space, q);
      out.report["dimension"] = q.basis.size();
      out.text += "quasi-derivation pairs: " + std::to_string(q.basis.size()) + "\n";
    } else {
      auto g = GeneralizedParams<K>::ordinary(f);
      if (!a.generalized.empty()) {
        if (a.generalized.size() != 3) throw CLI::ValidationError("--generalized", "expects three scalars");
        try {
          g = {f.parse(a.generalized[0]), f.parse(a.generalized[1]), f.parse(a.generalized[2])};
        } catch (const ParseError& e) {
          throw SchemaError("--generalized", e.what());
        }
      }
      auto d = solve_generalized(h, g, a.m, a.n, a.parity, conv);
      artifact = derivations_to_json(f, h.space, d);
      out.report["dimension"] = d.dim();
      out.text += "dimension: " + std::to_string(d.dim()) + "\n";
      for (std::size_t i = 0; i < d.basis.size(); ++i) out.text += "  d" + std::to_string(i) + " = " + d.basis[i].m.str() + "\n";
      if (a.oracle) {
        if constexpr (std::is_same_v<K, PrimeField>) {
          auto b = brute_force_derivations(h, a.m, a.n, a.parity, g, conv);
          const bool agree = b.dim() == d.dim() && same_span(f, h.dim(), b.basis, d.basis);
          out.report["oracle"] = {{"dimension", b.dim()}, {"agree", agree}};
          out.text += std::string("oracle: dimension ") + std::to_string(b.dim()) + ", " + (agree ? "agrees" : "DISAGREES") + "\n";
          out.pass = agree;
        } else {
          throw CLI::ValidationError("--oracle", "brute force needs a prime field instance");
        }
      }
    }
    if (!a.save.empty()) {
      write_json(a.save, artifact);
      out.report["output"] = a.save;
      out.text += "output: " + a.save + "\n";
    } else {
      out.report["result"] = artifact;
    }
    return out;
  });
}

struct SubspaceArgs {
  std::string path, subspace;
  bool generate = false;
  std::string save;
};

template <Field K>
json witness_json(const IdealWitness<K>& w) {
  json b = json::array();
  for (const auto& v : w.basis) b.push_back(vector_to_json<K>(v));
  return {{"basis", b},
          {"graded", w.is_graded},
          {"subalgebra", w.is_subalgebra},
          {"left_ideal", w.is_left},
          {"right_ideal", w.is_right},
          {"two_sided", w.is_two_sided},
          {"failure", w.failure}};
}

template <Field K>
std::string witness_text(const IdealWitness<K>& w) {
  std::string s = "dimension: " + std::to_string(w.basis.size()) + "\n";
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  s += std::string("graded: ") + yn(w.is_graded) + "\nsubalgebra: " + yn(w.is_subalgebra) + "\nleft ideal: " +
       yn(w.is_left) + "\nright ideal: " + yn(w.is_right) + "\ntwo-sided: " + yn(w.is_two_sided) + "\n";
  if (!w.failure.empty()) s += "failure: " + w.failure + "\n";
  return s;
}

Outcome cmd_ideal(const SubspaceArgs& a, const Options& o) {
  return with_dialgebra(a.path, o, [&](const auto& f, const auto& h) -> Outcome {
    auto vs = load_vectors(f, a.subspace, h.dim());
    if (a.generate) vs = generate_ideal(h, vs);
    auto w = classify_subspace(h, vs);
    Outcome out;
    out.report["subspace"] = witness_json(w);
    out.text = witness_text(w);
    out.pass = w.is_two_sided;
    return out;
  });
}

Outcome cmd_quotient(const SubspaceArgs& a, const Options& o) {
  return with_dialgebra(a.path, o, [&](const auto& f, const auto& h) -> Outcome {
    auto vs = load_vectors(f, a.subspace, h.dim());
    if (a.generate) vs = generate_ideal(h, vs);
    auto w = classify_subspace(h, vs);
    auto q = quotient(h, w);
    auto check = check_bihom_superdialgebra(q.instance, o.max_violations);
    auto mw = morphism_check(h, q.instance, q.projection);
    Outcome out;
    out.report["ideal"] = witness_json(w);
    out.report["projection"] = matrix_to_json(q.projection);
    out.report["quotient_check"] = violations_to_json(check);
    out.report["projection_is_morphism"] = mw.is_morphism();
    out.text = "ideal dimension: " + std::to_string(w.basis.size()) + "\nquotient dimension: " +
               std::to_string(q.instance.dim()) + "\nquotient check:\n" + violations_to_text(check) +
               "projection is a morphism: " + (mw.is_morphism() ? "yes" : "no") + "\n";
    out.pass = check.empty() && mw.is_morphism();
    attach_instance(out, q.instance, a.save);
    return out;
  });
}

struct MorphismArgs {
  std::string h1, h2, map;
};

Outcome cmd_morphism(const MorphismArgs& a, const Options& o) {
  auto j1 = read_json(a.h1), j2 = read_json(a.h2);
  return visit_field(j1, [&](const auto& f) -> Outcome {
    require_same_field(f, j2, a.h2);
    auto h1 = dialgebra_from_json(f, j1);
    auto h2 = dialgebra_from_json(f, j2);
    if (o.project_graded) {
      project_graded(h1);
      project_graded(h2);
    }
    auto g = load_map(f, a.map, h1.dim(), h2.dim());
    auto w = morphism_check(h1, h2, g);
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    Outcome out;
    out.report["even"] = w.even;
    out.report["commutes_alpha"] = w.commutes_alpha;
    out.report["commutes_epsilon"] = w.commutes_epsilon;
    out.report["left_compatible"] = w.left_compatible;
    out.report["right_compatible"] = w.right_compatible;
    out.report["kernel"] = witness_json(w.kernel_class);
    out.report["image"] = witness_json(w.image_class);
    out.text = std::string("even: ") + yn(w.even) + "\ncommutes with alpha: " + yn(w.commutes_alpha) +
               "\ncommutes with epsilon: " + yn(w.commutes_epsilon) + "\nleft compatible: " + yn(w.left_compatible) +
               "\nright compatible: " + yn(w.right_compatible) + "\nkernel dimension: " +
               std::to_string(w.kernel_class.basis.size()) + " (two-sided ideal: " + yn(w.kernel_class.is_two_sided) +
               ")\nimage dimension: " + std::to_string(w.image_class.basis.size()) +
               " (subalgebra: " + yn(w.image_class.is_subalgebra) + ")\n";
    out.pass = w.is_morphism();
    return out;
  });
}

struct AdArgs {
  std::string path, r;
};

Outcome cmd_ad(const AdArgs& a, const Options& o) {
  return with_dialgebra(a.path, o, [&](const auto& f, const auto& h) -> Outcome {
    auto r = parse_vector(f, a.r, h.dim());
    auto res = ad_operator(h, r);
    Outcome out;
    out.report["map"] = matrix_to_json(res.map.m);
    out.report["parity"] = res.map.parity;
    out.report["left_leibniz"] = res.left_leibniz;
    out.report["right_leibniz"] = res.right_leibniz;
    if (!res.left_leibniz) out.report["left_witness"] = res.left_witness;
    if (!res.right_leibniz) out.report["right_witness"] = res.right_witness;
    out.text = "ad = " + res.map.m.str() + "\nparity: " + std::to_string(res.map.parity) + "\nleft Leibniz: " +
               (res.left_leibniz ? "holds" : "fails at " + res.left_witness) +
               "\nright Leibniz: " + (res.right_leibniz ? "holds" : "fails at " + res.right_witness) + "\n";
    out.pass = res.left_leibniz;
    return out;
  });
}

struct BracketArgs {
  std::string path, basis1, basis2;
  bool generalized = false;
};

Outcome cmd_bracket(const BracketArgs& a, const Options& o) {
  return with_dialgebra(a.path, o, [&](const auto& f, const auto& h) -> Outcome {
    auto j1 = read_json(a.basis1), j2 = read_json(a.basis2);
    require_same_field(f, j1, a.basis1);
    require_same_field(f, j2, a.basis2);
    auto s1 = derivations_from_json(f, j1, h.dim());
    auto s2 = derivations_from_json(f, j2, h.dim());
    auto rep = a.generalized ? verify_generalized_bracket(h, s1, s2) : verify_bracket_closure(h, s1, s2);
    Outcome out;
    out.report["target"] = {{"m", rep.target.m}, {"n", rep.target.n}, {"parity", rep.target.parity}};
    out.report["target_dimension"] = rep.target_space.dim();
    json fails = json::array();
    for (const auto& e : rep.entries)
      if (!e.satisfies || !e.in_span || !e.antisymmetric)
        fails.push_back({{"pair", {e.i, e.j}}, {"satisfies", e.satisfies}, {"in_span", e.in_span},
                         {"antisymmetric", e.antisymmetric}, {"bracket", matrix_to_json(e.value.m)}});
    out.report["pairs"] = rep.entries.size();
    out.report["failures"] = fails;
    out.text = "target: m=" + std::to_string(rep.target.m) + " n=" + std::to_string(rep.target.n) + " parity=" +
               std::to_string(rep.target.parity) + " (dimension " + std::to_string(rep.target_space.dim()) + ")\npairs: " +
               std::to_string(rep.entries.size()) + "\nfailures: " + std::to_string(rep.failures()) + "\n";
    for (const auto& e : rep.entries)
      if (!e.satisfies || !e.in_span || !e.antisymmetric)
        out.text += "  (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") satisfies=" + std::to_string(e.satisfies) +
                    " in_span=" + std::to_string(e.in_span) + " antisymmetric=" + std::to_string(e.antisymmetric) + "\n";
    out.pass = rep.holds();
    return out;
  });
}

struct DiffArgs {
  std::string path;
  bool verify = false;
  std::string save;
};

Outcome cmd_from_differential(const DiffArgs& a, const Options& o) {
  auto j = read_json(a.path);
  return visit_field(j, [&](const auto& f) -> Outcome {
    auto d = differential_from_json(f, j);
    if (o.project_graded) project_graded(d);
    auto h = from_differential(d);
    Outcome out;
    if (a.verify) {
      auto r = check_bihom_superdialgebra(h, o.max_violations);
      out.report["verify"] = violations_to_json(r);
      out.text = "verify:\n" + violations_to_text(r);
      out.pass = r.empty();
    }
    attach_instance(out, h, a.save);
    return out;
  });
}

struct CorpusArgs {
  bool generate = false;
  std::size_t dim = 4;
  std::string field = "Q";
  std::uint64_t p = 5;
  std::size_t count = 20;
  std::string dir;
};

Outcome cmd_corpus(const CorpusArgs& a, const Options& o) {
  if (!a.generate) throw CLI::ValidationError("corpus", "--generate is required");
  if (a.dir.empty()) throw CLI::ValidationError("corpus", "--out DIR is required");
  auto emit = [&](const auto& f) {
    auto corpus = generate_corpus(f, o.seed, a.dim, a.count);
    fs::create_directories(a.dir);
    Outcome out;
    json files = json::array();
    for (const auto& e : corpus) {
      auto rep = check_bihom_superdialgebra(e.instance, 1);
      if (!rep.empty()) throw std::logic_error("generated instance " + e.name + " failed the checker");
      auto j = to_json(e.instance, e.name);
      auto path = fs::path(a.dir) / (e.name + ".json");
      write_json(path, j);
      auto dg = hex64(fnv1a64(j.dump(2) + "\n"));
      files.push_back({{"file", path.string()}, {"digest", dg}});
      out.text += path.string() + " " + dg + "\n";
    }
    out.report["files"] = files;
    return out;
  };
  if (a.field == "Q") return emit(RationalField{});
  if (a.field == "Fp") return emit(PrimeField(a.p));
  throw CLI::ValidationError("--field", "expected Q or Fp");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with BiHom-superdialgebras given by structure constants"};
  app.require_subcommand(1);
  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--max-violations", opt.max_violations, "Violations kept per axiom");
    sub->add_flag("--project-graded", opt.project_graded, "Zero structure constants that break the grading on load");
    sub->add_option("--seed", opt.seed, "Seed for all randomness");
  };

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Check an axiom system");
  c->add_option("instance", check.path)->required();
  c->add_option("--which", check.which)
      ->check(CLI::IsMember({"superdialgebra", "hom", "bihom-assoc", "bihom", "multiplicative", "regular", "grading"}));
  c->add_option("--out", opt.out, "Write the report here");
  add_common(c);

  TwistArgs tw;
  auto* t = app.add_subcommand("twist", "Twist constructions");
  t->add_option("instance", tw.path)->required();
  t->add_option("--alpha-prime", tw.alpha_prime, "Map file");
  t->add_option("--epsilon-prime", tw.epsilon_prime, "Map file");
  t->add_option("--power", tw.power, "Twist by the n-th powers of the structure maps");
  t->add_flag("--untwist", tw.untwist, "Undo the structure maps of a regular instance");
  t->add_option("--hom-to-bihom", tw.hom_to_bihom, "Map file for the second structure map");
  t->add_flag("--from-superdialgebra", tw.from_superdialgebra, "Input is a superdialgebra; maps become structure maps");
  t->add_flag("--verify", tw.verify, "Check the output");
  t->add_option("--save", tw.save, "Write the constructed instance here");
  t->add_option("--out", opt.out, "Write the report here");
  add_common(t);

  DerivArgs dv;
  auto* d = app.add_subcommand("derivations", "Solve for derivation spaces");
  d->add_option("instance", dv.path)->required();
  d->add_option("--m", dv.m);
  d->add_option("--n", dv.n);
  d->add_option("--parity", dv.parity)->check(CLI::IsMember({0, 1}));
  d->add_option("--generalized", dv.generalized, "gamma delta lambda")->expected(3);
  d->add_flag("--quasi", dv.quasi);
  d->add_flag("--oracle", dv.oracle, "Cross-check by exhaustive search (prime fields)");
  d->add_option("--sign-convention", dv.convention)->check(CLI::IsMember({"standard", "paper-dialgebra"}));
  d->add_option("--save", dv.save, "Write the basis file here");
  d->add_option("--out", opt.out, "Write the report here");
  add_common(d);

  SubspaceArgs id;
  auto* i = app.add_subcommand("ideal", "Classify a subspace");
  i->add_option("instance", id.path)->required();
  i->add_option("subspace", id.subspace)->required();
  i->add_flag("--generate", id.generate, "Use the ideal generated by the vectors");
  i->add_option("--out", opt.out, "Write the report here");
  add_common(i);

  SubspaceArgs qu;
  auto* q = app.add_subcommand("quotient", "Quotient by a graded two-sided ideal");
  q->add_option("instance", qu.path)->required();
  q->add_option("subspace", qu.subspace)->required();
  q->add_flag("--generate", qu.generate, "Use the ideal generated by the vectors");
  q->add_option("--save", qu.save, "Write the quotient instance here");
  q->add_option("--out", opt.out, "Write the report here");
  add_common(q);

  MorphismArgs mo;
  auto* m = app.add_subcommand("morphism", "Verify a morphism");
  m->add_option("source", mo.h1)->required();
  m->add_option("target", mo.h2)->required();
  m->add_option("map", mo.map)->required();
  m->add_option("--out", opt.out, "Write the report here");
  add_common(m);

  AdArgs ad;
  auto* a = app.add_subcommand("ad", "Inner map of an element");
  a->add_option("instance", ad.path)->required();
  a->add_option("--r", ad.r, "Comma-separated coordinates")->required();
  a->add_option("--out", opt.out, "Write the report here");
  add_common(a);

  BracketArgs br;
  auto* b = app.add_subcommand("bracket", "Bracket closure of two derivation bases");
  b->add_option("instance", br.path)->required();
  b->add_option("basis1", br.basis1)->required();
  b->add_option("basis2", br.basis2)->required();
  b->add_flag("--generalized", br.generalized, "Target parameters are the sums of the inputs'");
  b->add_option("--out", opt.out, "Write the report here");
  add_common(b);

  DiffArgs df;
  auto* f = app.add_subcommand("from-differential", "Dialgebra of a differential superalgebra");
  f->add_option("instance", df.path)->required();
  f->add_flag("--verify", df.verify, "Check the output");
  f->add_option("--save", df.save, "Write the constructed instance here");
  f->add_option("--out", opt.out, "Write the report here");
  add_common(f);

  CorpusArgs co;
  auto* g = app.add_subcommand("corpus", "Generate seeded instances");
  g->add_flag("--generate", co.generate);
  g->add_option("--dim", co.dim, "Largest dimension");
  g->add_option("--field", co.field)->check(CLI::IsMember({"Q", "Fp"}));
  g->add_option("--p", co.p, "Prime for --field Fp");
  g->add_option("--count", co.count);
  g->add_option("--out", co.dir, "Output directory");
  g->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  g->add_option("--seed", opt.seed, "Seed for all randomness");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto run = [&](const std::string& name, const std::vector<std::string>& inputs, auto&& body) -> int {
    Run r(name, opt);
    for (const auto& p : inputs) r.input(p);
    return r.finish(body());
  };

  try {
    if (*c) return run("check", {check.path}, [&] { return cmd_check(check, opt); });
    if (*t) {
      std::vector<std::string> in{tw.path};
      for (const auto& p : {tw.alpha_prime, tw.epsilon_prime, tw.hom_to_bihom})
        if (!p.empty()) in.push_back(p);
      return run("twist", in, [&] { return cmd_twist(tw, opt); });
    }
    if (*d) return run("derivations", {dv.path}, [&] { return cmd_derivations(dv, opt); });
    if (*i) return run("ideal", {id.path, id.subspace}, [&] { return cmd_ideal(id, opt); });
    if (*q) return run("quotient", {qu.path, qu.subspace}, [&] { return cmd_quotient(qu, opt); });
    if (*m) return run("morphism", {mo.h1, mo.h2, mo.map}, [&] { return cmd_morphism(mo, opt); });
    if (*a) return run("ad", {ad.path}, [&] { return cmd_ad(ad, opt); });
    if (*b) return run("bracket", {br.path, br.basis1, br.basis2}, [&] { return cmd_bracket(br, opt); });
    if (*f) return run("from-differential", {df.path}, [&] { return cmd_from_differential(df, opt); });
    if (*g) return run("corpus", {}, [&] { return cmd_corpus(co, opt); });
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const SingularMap& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NonCommutingMaps& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
