#include "agc/mission/mission.hpp"

#include "agc/error.hpp"
#include "agc/library/mealy.hpp"
#include "agc/ltl/parser.hpp"
#include "agc/patterns/patterns.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace agc::mission {

namespace fs = std::filesystem;

const contract::Contract &MissionFile::contract(const std::string &name) const {
  auto it = contracts.find(name);
  if (it == contracts.end()) throw Error("no contract named '" + name + "'");
  return it->second;
}

const library::ComponentLibrary &
MissionFile::library(const std::string &name) const {
  auto it = libraries.find(name);
  if (it == libraries.end()) throw Error("no library named '" + name + "'");
  return it->second;
}

namespace {

ltl::Formula parse_in_world(world::WorldModel &w, std::string_view text,
                            SourcePos origin,
                            std::vector<std::string> *warnings) {
  ltl::ParseOptions opts;
  ltl::ApSet known;
  for (const auto &t : w.types()) known.insert(t.ap);
  opts.known_aps = known;
  opts.origin = origin;
  opts.patterns = patterns::make_hook([&w](const std::string &arg) {
    if (const world::WorldType *t = w.resolve(arg)) return t->ap;
    return arg;
  });
  const ltl::ParseResult r = ltl::parse_formula(text, opts);
  for (const auto &ap : ltl::atoms(r.formula)) {
    if (known.count(ap)) continue;
    w.register_atom(ap);
    if (warnings) {
      warnings->push_back(std::to_string(origin.line) + ":" +
                          std::to_string(origin.column) +
                          ": undeclared atom '" + ap +
                          "' registered as an anonymous type");
    }
  }
  return r.formula;
}

// Replaces comments by spaces so that positions are preserved.
std::string strip_comments(std::string_view text) {
  std::string out(text);
  bool in_string = false;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const char c = out[i];
    if (c == '\n') {
      in_string = false;
      continue;
    }
    if (c == '"') in_string = !in_string;
    if (in_string) continue;
    if (c == '#' || (c == '/' && i + 1 < out.size() && out[i + 1] == '/')) {
      while (i < out.size() && out[i] != '\n') out[i++] = ' ';
      --i;
    }
  }
  return out;
}

enum class T { Ident, String, Punct, End };

struct Token {
  T kind;
  std::string text;
  SourcePos pos;
  std::size_t offset;
};

class Parser {
public:
  Parser(std::string text, std::string base_dir, const LoadOptions &opts)
      : text_(std::move(text)), base_dir_(std::move(base_dir)), opts_(opts) {}

  MissionFile run() {
    bool seen_world = false;
    while (true) {
      const Token t = next();
      if (t.kind == T::End) break;
      if (t.kind == T::Ident && t.text == "world") {
        if (seen_world) fail("only one world block is allowed", t.pos);
        if (!m_.contracts.empty() || !m_.libraries.empty()) {
          fail("the world block must come first", t.pos);
        }
        seen_world = true;
        world_block();
      } else if (t.kind == T::Ident && t.text == "contract") {
        contract_block();
      } else if (t.kind == T::Ident && t.text == "library") {
        library_block();
      } else {
        fail("expected 'world', 'contract' or 'library', found '" + t.text + "'",
             t.pos);
      }
    }
    return std::move(m_);
  }

private:
  [[noreturn]] void fail(const std::string &msg, SourcePos pos) {
    throw ParseError(msg, pos);
  }

  void skip_space() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) {
      advance();
    }
  }

  void advance() {
    if (text_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  Token next() {
    skip_space();
    Token t{T::End, "", pos_, i_};
    if (i_ >= text_.size()) return t;
    const char c = text_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = T::Ident;
      while (i_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_')) {
        t.text += text_[i_];
        advance();
      }
      return t;
    }
    if (c == '"') {
      t.kind = T::String;
      advance();
      while (i_ < text_.size() && text_[i_] != '"' && text_[i_] != '\n') {
        t.text += text_[i_];
        advance();
      }
      if (i_ >= text_.size() || text_[i_] != '"') fail("unterminated string", t.pos);
      advance();
      return t;
    }
    if (std::string_view("{}:;=,").find(c) != std::string_view::npos) {
      t.kind = T::Punct;
      t.text = std::string(1, c);
      advance();
      return t;
    }
    fail(std::string("unexpected character '") + c + "'", pos_);
  }

  Token peek() {
    const std::size_t i = i_;
    const SourcePos p = pos_;
    Token t = next();
    i_ = i;
    pos_ = p;
    return t;
  }

  Token expect_ident(const char *what) {
    Token t = next();
    if (t.kind != T::Ident) fail(std::string("expected ") + what, t.pos);
    return t;
  }

  void expect(const char *punct) {
    Token t = next();
    if (t.kind != T::Punct || t.text != punct) {
      fail(std::string("expected '") + punct + "', found '" +
               (t.kind == T::End ? "end of file" : t.text) + "'",
           t.pos);
    }
  }

  bool accept(const char *punct) {
    const Token t = peek();
    if (t.kind == T::Punct && t.text == punct) {
      next();
      return true;
    }
    return false;
  }

  // Raw formula text up to the next ';'.
  std::pair<std::string, SourcePos> expression() {
    skip_space();
    const SourcePos start = pos_;
    std::string out;
    while (i_ < text_.size() && text_[i_] != ';' && text_[i_] != '}') {
      out += text_[i_];
      advance();
    }
    if (i_ >= text_.size() || text_[i_] != ';') fail("expected ';' after formula", pos_);
    advance();
    return {out, start};
  }

  struct Decl {
    std::string what;
    std::vector<std::string> args;
    SourcePos pos;
  };

  void world_block() {
    expect("{");
    std::vector<Decl> relations;
    while (!accept("}")) {
      const Token kw = expect_ident("a declaration");
      if (kw.text == "type") {
        const Token kind = expect_ident("a type kind");
        world::TypeKind k;
        if (kind.text == "location") {
          k = world::TypeKind::Location;
        } else if (kind.text == "sensor") {
          k = world::TypeKind::Sensor;
        } else if (kind.text == "action") {
          k = world::TypeKind::Action;
        } else {
          fail("type kind must be location, sensor or action", kind.pos);
        }
        const Token id = expect_ident("a type name");
        if (!std::isupper(static_cast<unsigned char>(id.text[0]))) {
          fail("type names start with a capital letter", id.pos);
        }
        if (m_.world.find(id.text)) fail("duplicate type '" + id.text + "'", id.pos);
        m_.world.add_type(id.text, k);
        const Token maybe = peek();
        if (maybe.kind == T::Ident && maybe.text == "extends") {
          next();
          const Token super = expect_ident("a type name");
          relations.push_back({"extends", {id.text, super.text}, super.pos});
        }
      } else if (kw.text == "mutex" || kw.text == "adjacent") {
        const Token a = expect_ident("a type name");
        const Token b = expect_ident("a type name");
        relations.push_back({kw.text, {a.text, b.text}, kw.pos});
      } else if (kw.text == "covers") {
        const Token covered = expect_ident("a type name");
        expect("=");
        Decl d{"covers", {covered.text}, kw.pos};
        do {
          d.args.push_back(expect_ident("a type name").text);
        } while (accept(","));
        relations.push_back(std::move(d));
      } else {
        fail("unknown declaration '" + kw.text + "'", kw.pos);
      }
      accept(";");
    }
    auto id_of = [&](const std::string &name) {
      const world::WorldType *t = m_.world.resolve(name);
      return t ? t->id : name;
    };
    for (const Decl &d : relations) {
      if (d.what == "extends") {
        m_.world.add_extension(d.args[0], id_of(d.args[1]));
      } else if (d.what == "mutex") {
        m_.world.add_mutex(id_of(d.args[0]), id_of(d.args[1]));
      } else if (d.what == "adjacent") {
        m_.world.add_adjacency(id_of(d.args[0]), id_of(d.args[1]));
      } else {
        std::vector<std::string> members;
        for (std::size_t i = 1; i < d.args.size(); ++i) members.push_back(id_of(d.args[i]));
        m_.world.add_covering(id_of(d.args[0]), members);
      }
    }
    const auto violations = m_.world.validate();
    if (!violations.empty()) {
      std::string msg = "invalid world:";
      for (const auto &v : violations) msg += "\n  " + v.message;
      throw Error(msg);
    }
  }

  ltl::Formula formula(const std::pair<std::string, SourcePos> &e) {
    return parse_in_world(m_.world, e.first, e.second, &m_.warnings);
  }

  struct Body {
    ltl::Formula assumes;
    ltl::Formula guarantees;
    std::optional<std::string> impl;
  };

  Body body(bool allow_impl) {
    expect("{");
    Body b;
    bool seen_a = false, seen_g = false;
    while (!accept("}")) {
      const Token key = expect_ident("'assumes', 'guarantees' or 'impl'");
      expect(":");
      if (key.text == "assumes" && !seen_a) {
        b.assumes = formula(expression());
        seen_a = true;
      } else if (key.text == "guarantees" && !seen_g) {
        b.guarantees = formula(expression());
        seen_g = true;
      } else if (key.text == "impl" && allow_impl && !b.impl) {
        const Token s = next();
        if (s.kind != T::String) fail("expected a quoted path", s.pos);
        b.impl = s.text;
        expect(";");
      } else {
        fail("unexpected or repeated '" + key.text + "'", key.pos);
      }
    }
    if (!seen_g) fail("missing 'guarantees'", pos_);
    return b;
  }

  void contract_block() {
    const Token name = expect_ident("a contract name");
    if (m_.contracts.count(name.text)) {
      throw Error("duplicate contract '" + name.text + "'");
    }
    Body b = body(false);
    m_.contracts.emplace(name.text,
                         contract::saturate({b.assumes, b.guarantees}));
    m_.contract_order.push_back(name.text);
  }

  void library_block() {
    const Token name = expect_ident("a library name");
    if (m_.libraries.count(name.text)) {
      throw Error("duplicate library '" + name.text + "'");
    }
    library::ComponentLibrary lib(name.text);
    expect("{");
    while (!accept("}")) {
      const Token kw = expect_ident("'component'");
      if (kw.text != "component") fail("expected 'component'", kw.pos);
      const Token cname = expect_ident("a component name");
      if (lib.find(cname.text)) {
        throw Error("duplicate component '" + cname.text + "' in library '" +
                    name.text + "'");
      }
      Body b = body(true);
      library::Component comp{cname.text,
                              contract::saturate({b.assumes, b.guarantees}),
                              std::nullopt};
      if (b.impl) {
        fs::path p(*b.impl);
        if (p.is_relative()) p = fs::path(base_dir_) / p;
        comp.impl_ref = p.lexically_normal().string();
        if (opts_.check_machines) {
          const auto m = library::MealyMachine::load(*comp.impl_ref);
          if (!m.is_total()) {
            throw Error("machine '" + *comp.impl_ref + "' of component '" +
                        cname.text + "' is not total");
          }
        }
      }
      if (opts_.check_components) {
        contract::Context ctx = opts_.context;
        ctx.world = &m_.world;
        if (!contract::is_well_formed(comp.contract, ctx)) {
          throw Error("component '" + cname.text + "' of library '" +
                      name.text + "' has an ill-formed contract");
        }
      }
      lib.add(std::move(comp));
    }
    m_.libraries.emplace(name.text, std::move(lib));
    m_.library_order.push_back(name.text);
  }

  std::string text_;
  std::string base_dir_;
  const LoadOptions &opts_;
  std::size_t i_ = 0;
  SourcePos pos_;
  MissionFile m_;
};

} // namespace

ltl::Formula MissionFile::parse_formula(std::string_view text) {
  return parse_in_world(world, text, SourcePos{}, &warnings);
}

MissionFile parse_mission(std::string_view text, const std::string &base_dir,
                          const LoadOptions &options) {
  Parser p(strip_comments(text), base_dir, options);
  return p.run();
}

MissionFile load_mission(const std::string &path, const LoadOptions &options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mission file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const fs::path dir = fs::path(path).parent_path();
  try {
    return parse_mission(buf.str(), dir.empty() ? "." : dir.string(), options);
  } catch (const ParseError &e) {
    throw ParseError(path + ": " + e.bare_message(), e.position());
  }
}

} // namespace agc::mission
