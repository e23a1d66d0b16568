#include <ufact/io.hh>
#include <ufact/errors.hh>

#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ufact
{
  std::string
  read_file(const std::string& path)
  {
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw input_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  json
  read_json_file(const std::string& path)
  {
    try
      {
        return json::parse(read_file(path));
      }
    catch (const json::exception& e)
      {
        throw input_error(path + ": " + e.what());
      }
  }

  void
  write_file(const std::string& path, const std::string& text)
  {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
      throw input_error("cannot write " + path);
  }

  namespace
  {
    // Runs f, turning json type and key errors into input_error.
    template <class F>
    auto
    guarded(const char* what, F f)
    {
      try
        {
          return f();
        }
      catch (const json::exception& e)
        {
          throw input_error(std::string(what) + ": " + e.what());
        }
    }

    const json&
    field(const json& j, const char* key)
    {
      if (!j.is_object() || !j.contains(key))
        throw input_error(std::string("missing field \"") + key + "\"");
      return j.at(key);
    }

    elem
    element_named(const finite_semigroup& s, const json& v)
    {
      if (v.is_number_integer())
        {
          auto i = v.get<long long>();
          if (i < 0 || i >= s.size())
            throw input_error("element index " + std::to_string(i)
                              + " out of range");
          return static_cast<elem>(i);
        }
      auto name = v.get<std::string>();
      auto e = s.find(name);
      if (!e)
        throw input_error("unknown element '" + name + "'");
      return *e;
    }

    void
    check_letter(const std::string& l)
    {
      if (utf8_scalars(l).size() != 1)
        throw input_error("letter '" + l
                          + "' is not a single Unicode scalar value");
    }

    json
    word_json(const word& w, const std::vector<std::string>& alphabet)
    {
      return format_word(w, alphabet);
    }

    std::string
    dot_escape(const std::string& s)
    {
      std::string out;
      for (char c : s)
        {
          if (c == '"' || c == '\\')
            out += '\\';
          out += c;
        }
      return out;
    }
  }

  json
  semigroup_to_json(const finite_semigroup& s)
  {
    return {{"elements", s.names()}, {"table", s.table()}};
  }

  finite_semigroup
  semigroup_from_json(const json& j)
  {
    return guarded("semigroup", [&] {
      auto names = field(j, "elements").get<std::vector<std::string>>();
      auto table
          = field(j, "table").get<std::vector<std::vector<long long>>>();
      std::set<std::string> seen(names.begin(), names.end());
      if (seen.size() != names.size())
        throw input_error("duplicate element names");
      if (table.size() != names.size())
        throw input_error("table has " + std::to_string(table.size())
                          + " rows for " + std::to_string(names.size())
                          + " elements");
      return finite_semigroup(std::move(names), table);
    });
  }

  json
  morphism_to_json(const morphism& phi)
  {
    json j = semigroup_to_json(phi.semigroup());
    j["alphabet"] = phi.alphabet();
    json map = json::object();
    for (letter a = 0; a < phi.alphabet_size(); ++a)
      map[phi.alphabet()[a]] = phi.semigroup().name(phi.image(a));
    j["map"] = map;
    return j;
  }

  morphism
  morphism_from_json(const json& j)
  {
    return guarded("morphism", [&] {
      auto s = std::make_shared<const finite_semigroup>(
          semigroup_from_json(j.contains("semigroup") ? j.at("semigroup") : j));
      auto alphabet = field(j, "alphabet").get<std::vector<std::string>>();
      const json& map = field(j, "map");
      if (!map.is_object())
        throw input_error("\"map\" must be an object");
      std::set<std::string> seen;
      std::vector<elem> images;
      for (const auto& l : alphabet)
        {
          check_letter(l);
          if (!seen.insert(l).second)
            throw input_error("duplicate letter '" + l + "'");
          if (!map.contains(l))
            throw input_error("letter '" + l + "' has no image");
          images.push_back(element_named(*s, map.at(l)));
        }
      for (const auto& [l, _] : map.items())
        if (!seen.count(l))
          throw unknown_letter(l);
      if (alphabet.empty())
        throw input_error("empty alphabet");
      return morphism(s, std::move(alphabet), std::move(images));
    });
  }

  json
  automaton_to_json(const ordered_automaton& a)
  {
    json states = json::array();
    for (state q = 0; q < a.size(); ++q)
      states.push_back({{"name", a.name(q)}, {"rank", a.rank(q)}});
    json finals = json::array(), buchi = json::array();
    for (state q : a.finals())
      finals.push_back(a.name(q));
    for (state q : a.buchi_states())
      buchi.push_back(a.name(q));
    json trans = json::array();
    for (auto [p, l, q] : a.transitions())
      trans.push_back({a.name(p), a.alphabet()[l], a.name(q)});
    return {{"alphabet", a.alphabet()},
            {"states", states},
            {"initial", a.initial() >= 0 ? json(a.name(a.initial())) : json()},
            {"finals", finals},
            {"buchi", buchi},
            {"transitions", trans}};
  }

  ordered_automaton
  automaton_from_json(const json& j)
  {
    return guarded("automaton", [&] {
      const json& trans = field(j, "transitions");
      std::vector<std::string> alphabet;
      if (j.contains("alphabet"))
        alphabet = j.at("alphabet").get<std::vector<std::string>>();
      else
        {
          std::set<std::string> letters;
          for (const auto& t : trans)
            letters.insert(t.at(1).get<std::string>());
          alphabet.assign(letters.begin(), letters.end());
        }
      for (const auto& l : alphabet)
        check_letter(l);
      ordered_automaton a(alphabet);
      std::set<std::string> names;
      for (const auto& s : field(j, "states"))
        {
          auto name = field(s, "name").get<std::string>();
          if (!names.insert(name).second)
            throw input_error("duplicate state '" + name + "'");
          a.add_state(name, field(s, "rank").get<long long>());
        }
      a.set_initial(a.find_state(field(j, "initial").get<std::string>()));
      for (const auto& f : field(j, "finals"))
        a.set_final(a.find_state(f.get<std::string>()));
      if (j.contains("buchi"))
        for (const auto& b : j.at("buchi"))
          a.set_buchi(a.find_state(b.get<std::string>()));
      for (const auto& t : trans)
        {
          if (!t.is_array() || t.size() != 3)
            throw input_error("transition " + t.dump()
                              + " is not a [src, letter, dst] triple");
          a.add_transition(a.find_state(t[0].get<std::string>()),
                           a.find_letter(t[1].get<std::string>()),
                           a.find_state(t[2].get<std::string>()));
        }
      a.validate();
      return a;
    });
  }

  std::string
  automaton_to_dot(const ordered_automaton& a)
  {
    std::ostringstream o;
    o << "digraph automaton {\n  rankdir=LR;\n"
      << "  init [shape=point];\n";
    for (state q = 0; q < a.size(); ++q)
      {
        o << "  q" << q << " [label=\"" << dot_escape(a.name(q)) << ':'
          << a.rank(q) << "\", shape="
          << (a.is_final(q) ? "doublecircle" : "circle");
        if (a.is_buchi(q))
          o << ", style=filled, fillcolor=lightgrey";
        o << "];\n";
      }
    if (a.initial() >= 0)
      o << "  init -> q" << a.initial() << ";\n";
    std::map<std::pair<state, state>, std::string> edges;
    for (auto [p, l, q] : a.transitions())
      {
        auto& lab = edges[{p, q}];
        lab += (lab.empty() ? "" : ",") + a.alphabet()[l];
      }
    for (const auto& [pq, lab] : edges)
      o << "  q" << pq.first << " -> q" << pq.second << " [label=\""
        << dot_escape(lab) << "\"];\n";
    o << "}\n";
    return o.str();
  }

  json
  build_report_to_json(const build_level& b)
  {
    const auto& sg = b.phi.semigroup();
    json j;
    j["case"] = to_string(b.decision.tag);
    j["c"] = b.decision.c >= 0 ? json(sg.name(b.decision.c)) : json();
    j["alphabet"] = b.phi.alphabet();
    j["elements"] = sg.names();
    j["weak_states"] = b.weak.size();
    j["states"] = b.good.size();
    j["weak_height"] = b.weak_height();
    j["height"] = b.height();
    if (b.profile)
      j["profile"]
          = {{"k", b.profile->k}, {"l", b.profile->ell}, {"n", b.profile->n}};
    else
      j["profile"] = nullptr;
    json derived = json::array();
    for (std::size_t i = 0; i < b.derived.size(); ++i)
      derived.push_back(
          {{"element", sg.name(b.derived[i])},
           {"witness", word_json(b.derived_witnesses[i], b.phi.alphabet())}});
    j["derived"] = derived;
    json children = json::array();
    if (b.child1)
      {
        j["h1"] = b.h1;
        j["h2"] = b.h2;
        json c1 = build_report_to_json(*b.child1);
        c1["role"] = "sigma1";
        json c2 = build_report_to_json(*b.child2);
        c2["role"] = "derived";
        children.push_back(c1);
        children.push_back(c2);
      }
    j["children"] = children;
    json heights = json::object();
    for (state q = 0; q < b.good.size(); ++q)
      heights[b.good.name(q)] = b.heights[q];
    j["heights"] = heights;
    return j;
  }

  height_assignment
  heights_from_report(const json& report, const ordered_automaton& a)
  {
    return guarded("build report", [&] {
      if (!report.is_object() || !report.contains("heights"))
        throw missing_build_report("report carries no heights");
      const json& hs = report.at("heights");
      if (hs.size() != static_cast<std::size_t>(a.size()))
        throw missing_build_report("report was built for another automaton");
      height_assignment h;
      h.h.resize(a.size());
      for (state q = 0; q < a.size(); ++q)
        {
          if (!hs.contains(a.name(q)))
            throw missing_build_report("report has no height for state "
                                       + a.name(q));
          h.h[q] = hs.at(a.name(q)).get<int>();
        }
      return h;
    });
  }

  namespace
  {
    json
    verdict_json(const char* name, const axiom_verdict& v,
                 const std::vector<std::string>& alphabet)
    {
      json j = {{"axiom", name}, {"pass", v.pass}, {"detail", v.detail}};
      if (v.witness)
        j["witness"] = format_word(*v.witness, alphabet);
      if (v.up_witness)
        j["up_witness"] = format_up_word(*v.up_witness, alphabet);
      return j;
    }
  }

  json
  goodness_report_to_json(const goodness_report& r, const ordered_automaton& a,
                          const morphism& phi)
  {
    const auto& al = a.alphabet();
    json j;
    j["good"] = r.good();
    j["weakly_good"] = r.weakly_good();
    j["axioms"] = {verdict_json("G1", r.g1, al), verdict_json("G2", r.g2, al),
                   verdict_json("G3", r.g3, al), verdict_json("G4", r.g4, al)};
    json images = json::array();
    for (const auto& im : r.images)
      {
        json names = json::array();
        for (elem s : im.image)
          names.push_back(phi.semigroup().name(s));
        json x = {{"state", a.name(im.q)}, {"image", names}};
        x["idempotent"] = im.idempotent
                              ? json(phi.semigroup().name(*im.idempotent))
                              : json();
        if (im.witness)
          x["witness"] = format_word(*im.witness, al);
        images.push_back(x);
      }
    j["images"] = images;
    return j;
  }

  std::string
  goodness_report_to_text(const goodness_report& r, const ordered_automaton& a,
                          const morphism&)
  {
    std::ostringstream o;
    auto line = [&](const char* n, const axiom_verdict& v) {
      o << n << ' ' << (v.pass ? "pass" : "FAIL");
      if (!v.detail.empty())
        o << ": " << v.detail;
      if (v.witness)
        o << " [witness \"" << format_word(*v.witness, a.alphabet()) << "\"]";
      if (v.up_witness)
        o << " [witness " << format_up_word(*v.up_witness, a.alphabet())
          << "]";
      o << '\n';
    };
    line("G1", r.g1);
    line("G2", r.g2);
    line("G3", r.g3);
    line("G4", r.g4);
    o << (r.good() ? "good" : r.weakly_good() ? "weakly good" : "not good")
      << '\n';
    return o.str();
  }

  json
  split_to_json(const split& s)
  {
    if (!s.is_lasso())
      return s.stem;
    return {{"stem", s.stem}, {"cycle", s.cycle}};
  }

  split
  split_from_json(const json& j)
  {
    return guarded("split", [&] {
      split s;
      if (j.is_array())
        s.stem = j.get<std::vector<int>>();
      else
        {
          s.stem = field(j, "stem").get<std::vector<int>>();
          s.cycle = field(j, "cycle").get<std::vector<int>>();
        }
      return s;
    });
  }

  json
  fact_tree_to_json(const fact_tree& t, const morphism& phi)
  {
    const auto& sg = phi.semigroup();
    auto label = [&](elem e) {
      return e >= 0 && e < sg.size() ? json(sg.name(e)) : json();
    };
    if (t.is_leaf())
      return {{"letter", phi.alphabet().at(t.a)}, {"label", label(t.label)}};
    json children = json::array();
    for (const auto& c : t.children)
      children.push_back(fact_tree_to_json(c, phi));
    return {{"label", label(t.label)}, {"children", children}};
  }

  fact_tree
  fact_tree_from_json(const json& j, const morphism& phi)
  {
    return guarded("tree", [&] {
      fact_tree t;
      const json& lab = field(j, "label");
      t.label = lab.is_null() ? -1 : element_named(phi.semigroup(), lab);
      if (j.contains("children"))
        {
          for (const auto& c : j.at("children"))
            t.children.push_back(fact_tree_from_json(c, phi));
          if (t.children.empty())
            throw input_error("internal tree node without children");
        }
      else
        t.a = phi.find_letter(field(j, "letter").get<std::string>());
      return t;
    });
  }

  std::string
  fact_tree_to_dot(const fact_tree& t, const morphism& phi)
  {
    std::ostringstream o;
    o << "digraph tree {\n  node [shape=box];\n";
    int next = 0;
    std::function<int(const fact_tree&)> emit = [&](const fact_tree& n) {
      int id = next++;
      std::string lab = n.label >= 0 ? phi.semigroup().name(n.label) : "?";
      if (n.is_leaf())
        lab = phi.alphabet().at(n.a) + ":" + lab;
      o << "  t" << id << " [label=\"" << dot_escape(lab) << "\"";
      if (n.is_leaf())
        o << ", shape=plaintext";
      else if (n.children.size() > 2)
        o << ", style=bold";
      o << "];\n";
      for (const auto& c : n.children)
        {
          int k = emit(c);
          o << "  t" << id << " -> t" << k << ";\n";
        }
      return id;
    };
    emit(t);
    o << "}\n";
    return o.str();
  }

  namespace
  {
    const char*
    kind_name(expr_kind k)
    {
      switch (k)
        {
        case expr_kind::empty:
          return "empty";
        case expr_kind::epsilon:
          return "epsilon";
        case expr_kind::letter:
          return "letter";
        case expr_kind::union_:
          return "union";
        case expr_kind::concat:
          return "concat";
        case expr_kind::plus:
          return "plus";
        case expr_kind::omega:
          return "omega";
        }
      return "?";
    }

    expr_kind
    kind_from_name(const std::string& s)
    {
      for (auto k : {expr_kind::empty, expr_kind::epsilon, expr_kind::letter,
                     expr_kind::union_, expr_kind::concat, expr_kind::plus,
                     expr_kind::omega})
        if (s == kind_name(k))
          return k;
      throw input_error("unknown expression node \"" + s + "\"");
    }
  }

  json
  parse_tree_to_json(const parse_tree& t, const morphism& phi)
  {
    json j = {{"node", kind_name(t.e->kind)}, {"from", t.from}, {"to", t.to}};
    if (t.e->ann)
      j["ann"] = phi.semigroup().name(*t.e->ann);
    if (t.e->kind == expr_kind::letter)
      j["letter"] = phi.alphabet().at(t.e->a);
    if (!t.children.empty())
      {
        json cs = json::array();
        for (const auto& c : t.children)
          cs.push_back(parse_tree_to_json(c, phi));
        j["children"] = cs;
      }
    return j;
  }

  json
  expr_bundle_to_json(const expr_bundle& b, std::uint64_t text_limit)
  {
    const auto& sg = b.phi.semigroup();
    const auto& al = b.phi.alphabet();
    json nodes = json::array();
    std::unordered_map<const expr_node*, std::size_t> id;
    auto add = [&](const expr& root) {
      for_each_node(root, [&](const expr_node& n) {
        if (id.count(&n))
          return;
        json x = {{"op", kind_name(n.kind)}};
        if (n.kind == expr_kind::letter)
          x["letter"] = al.at(n.a);
        if (n.left)
          {
            json args = {id.at(n.left.get())};
            if (n.right)
              args.push_back(id.at(n.right.get()));
            x["args"] = args;
          }
        if (n.ann)
          x["ann"] = sg.name(*n.ann);
        id.emplace(&n, nodes.size());
        nodes.push_back(x);
      });
    };
    auto root = [&](const expr& e) {
      add(e);
      json r = {{"node", id.at(e.get())}, {"tree_size", tree_size(e)}};
      if (tree_size(e) <= text_limit)
        r["text"] = to_text(e, al, &sg);
      return r;
    };
    json finite = json::object();
    for (const auto& [name, e] : b.finite)
      finite[name] = root(e);
    json j = morphism_to_json(b.phi);
    j["finite"] = finite;
    j["omega"] = b.omega ? root(b.omega) : json();
    j["nodes"] = nodes;
    return j;
  }

  expr_bundle
  expr_bundle_from_json(const json& j)
  {
    return guarded("expressions", [&] {
      morphism phi = morphism_from_json(j);
      const auto& sg = phi.semigroup();
      std::vector<expr> built;
      for (const auto& x : field(j, "nodes"))
        {
          auto kind = kind_from_name(field(x, "op").get<std::string>());
          std::optional<elem> ann;
          if (x.contains("ann") && !x.at("ann").is_null())
            ann = element_named(sg, x.at("ann"));
          std::vector<expr> args;
          if (x.contains("args"))
            for (const auto& i : x.at("args"))
              {
                auto k = i.get<std::size_t>();
                if (k >= built.size())
                  throw input_error("expression node refers forward");
                args.push_back(built[k]);
              }
          std::size_t want = kind == expr_kind::union_
                                     || kind == expr_kind::concat
                                 ? 2
                             : kind == expr_kind::plus
                                     || kind == expr_kind::omega
                                 ? 1
                                 : 0;
          if (args.size() != want)
            throw input_error(std::string("node \"") + kind_name(kind)
                              + "\" needs " + std::to_string(want)
                              + " arguments");
          expr e;
          switch (kind)
            {
            case expr_kind::empty:
              e = e_empty();
              break;
            case expr_kind::epsilon:
              e = e_epsilon();
              break;
            case expr_kind::letter:
              e = e_letter(
                  phi.find_letter(field(x, "letter").get<std::string>()),
                  ann);
              break;
            case expr_kind::union_:
              e = e_union(args[0], args[1], ann);
              break;
            case expr_kind::concat:
              e = e_concat(args[0], args[1], ann);
              break;
            case expr_kind::plus:
              e = e_plus(args[0], ann);
              break;
            case expr_kind::omega:
              e = e_omega(args[0], ann);
              break;
            }
          if (ann && !e->ann)
            e = with_annotation(e, ann);
          built.push_back(e);
        }
      auto root = [&](const json& r) {
        auto k = field(r, "node").get<std::size_t>();
        if (k >= built.size())
          throw input_error("expression root out of range");
        return built[k];
      };
      expr_bundle b{phi, {}, nullptr};
      for (const auto& [name, r] : field(j, "finite").items())
        {
          element_named(sg, json(name));
          b.finite[name] = root(r);
        }
      if (j.contains("omega") && !j.at("omega").is_null())
        b.omega = root(j.at("omega"));
      return b;
    });
  }
}
