#include "qadm/game.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qadm {

namespace {

constexpr std::pair<Measure, std::string_view> kMeasureNames[] = {
    {Measure::Inf, "inf"},          {Measure::Sup, "sup"},
    {Measure::LimInf, "liminf"},    {Measure::LimSup, "limsup"},
    {Measure::MeanPayoffInf, "mp-inf"}, {Measure::MeanPayoffSup, "mp-sup"},
};

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

} // namespace

std::string_view measure_name(Measure m) {
    for (auto& [k, n] : kMeasureNames)
        if (k == m) return n;
    return "?";
}

std::optional<Measure> measure_from_name(std::string_view s) {
    for (auto& [k, n] : kMeasureNames)
        if (n == s) return k;
    return std::nullopt;
}

bool is_mean_payoff(Measure m) { return m == Measure::MeanPayoffInf || m == Measure::MeanPayoffSup; }
bool is_regular(Measure m) { return !is_mean_payoff(m); }

bool valid_vertex_id(std::string_view id) {
    if (id.empty()) return false;
    auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
    if (!head(id[0])) return false;
    return std::all_of(id.begin() + 1, id.end(),
                       [&](char c) { return head(c) || std::isdigit(static_cast<unsigned char>(c)); });
}

std::vector<Diagnostic> validate(const GameSpec& s) {
    std::vector<Diagnostic> d;
    if (s.players < 1) d.push_back({0, "players must be at least 1"});
    if (!s.measure) d.push_back({0, "missing measure"});
    std::map<std::string, int> owner;
    for (auto& v : s.vertices) {
        if (!valid_vertex_id(v.id)) d.push_back({v.line, "invalid vertex id '" + v.id + "'"});
        if (owner.count(v.id)) d.push_back({v.line, "duplicate vertex " + v.id});
        owner[v.id] = v.owner;
        if (v.owner < 1 || v.owner > s.players)
            d.push_back({v.line, "vertex " + v.id + " has owner " + std::to_string(v.owner) + " outside 1.." +
                                     std::to_string(s.players)});
    }
    if (!s.init) {
        d.push_back({0, "missing init"});
    } else if (!owner.count(*s.init)) {
        d.push_back({s.init_line, "unknown vertex " + *s.init + " in init"});
    }
    std::set<std::pair<std::string, std::string>> seen;
    std::set<std::string> has_out;
    for (auto& e : s.edges) {
        bool ok = true;
        for (auto* id : {&e.src, &e.dst})
            if (!owner.count(*id)) {
                d.push_back({e.line, "unknown vertex " + *id + " in edge " + e.src + " -> " + e.dst});
                ok = false;
            }
        if (static_cast<int>(e.w.size()) != s.players)
            d.push_back({e.line, "edge " + e.src + " -> " + e.dst + " has " + std::to_string(e.w.size()) +
                                     " weights, expected " + std::to_string(s.players)});
        if (!seen.insert({e.src, e.dst}).second)
            d.push_back({e.line, "duplicate edge " + e.src + " -> " + e.dst});
        if (ok) has_out.insert(e.src);
    }
    for (auto& v : s.vertices)
        if (!has_out.count(v.id)) d.push_back({v.line, "vertex " + v.id + " has no outgoing edge"});
    return d;
}

Game::Game(const GameSpec& s) {
    auto diags = validate(s);
    if (!diags.empty()) throw ParseError(diags.front().line, diags.front().message);
    players_ = s.players;
    measure_ = *s.measure;
    std::vector<const GameSpec::Vertex*> vs;
    for (auto& v : s.vertices) vs.push_back(&v);
    std::sort(vs.begin(), vs.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (auto* v : vs) {
        index_[v->id] = static_cast<int>(names_.size());
        names_.push_back(v->id);
        owners_.push_back(v->owner);
    }
    init_ = index_.at(*s.init);
    for (auto& e : s.edges) edges_.push_back({index_.at(e.src), index_.at(e.dst), e.w});
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
    out_begin_.assign(names_.size() + 1, 0);
    for (auto& e : edges_) ++out_begin_[e.src + 1];
    for (std::size_t v = 0; v < names_.size(); ++v) out_begin_[v + 1] += out_begin_[v];
    out_list_.resize(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) out_list_[i] = static_cast<int>(i);
}

std::optional<int> Game::find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int Game::index_of(std::string_view id) const {
    auto v = find(id);
    if (!v) throw Error("unknown vertex " + std::string(id));
    return *v;
}

std::span<const int> Game::out(int v) const {
    return {out_list_.data() + out_begin_[v], static_cast<std::size_t>(out_begin_[v + 1] - out_begin_[v])};
}

std::optional<int> Game::edge_between(int u, int v) const {
    for (int e : out(u))
        if (edges_[e].dst == v) return e;
    return std::nullopt;
}

std::vector<int> Game::successors(int v) const {
    std::vector<int> r;
    for (int e : out(v)) r.push_back(edges_[e].dst);
    return r;
}

GameSpec Game::spec() const {
    GameSpec s;
    s.players = players_;
    s.measure = measure_;
    s.init = names_[init_];
    for (int v = 0; v < size(); ++v) s.vertices.push_back({names_[v], owners_[v], 0});
    for (auto& e : edges_) s.edges.push_back({names_[e.src], names_[e.dst], e.w, 0});
    return s;
}

Game Game::with_init(int v) const {
    Game g = *this;
    g.init_ = v;
    return g;
}

Game Game::with_measure(Measure m) const {
    Game g = *this;
    g.measure_ = m;
    return g;
}

bool operator==(const Game& a, const Game& b) {
    if (a.players() != b.players() || a.measure() != b.measure() || a.size() != b.size() ||
        a.edges().size() != b.edges().size())
        return false;
    for (int v = 0; v < a.size(); ++v)
        if (a.name(v) != b.name(v) || a.owner(v) != b.owner(v)) return false;
    if (a.name(a.init()) != b.name(b.init())) return false;
    for (std::size_t e = 0; e < a.edges().size(); ++e) {
        auto& x = a.edges()[e];
        auto& y = b.edges()[e];
        if (x.src != y.src || x.dst != y.dst || x.w != y.w) return false;
    }
    return true;
}

GameSpec parse_game_spec(std::string_view text) {
    GameSpec s;
    bool have_players = false;
    int lineno = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        auto tok = split_ws(raw);
        if (tok.empty()) continue;
        const std::string& kw = tok[0];
        auto arity = [&](std::size_t n) {
            if (tok.size() != n) throw ParseError(lineno, "'" + kw + "' expects " + std::to_string(n - 1) + " argument(s)");
        };
        auto parse_int = [&](const std::string& t) {
            try {
                std::size_t pos = 0;
                int v = std::stoi(t, &pos);
                if (pos != t.size()) throw std::invalid_argument(t);
                return v;
            } catch (const std::exception&) {
                throw ParseError(lineno, "expected an integer, got '" + t + "'");
            }
        };
        if (!have_players && kw != "players") throw ParseError(lineno, "'players' must be the first directive");
        if (kw == "players") {
            arity(2);
            if (have_players) throw ParseError(lineno, "duplicate 'players'");
            s.players = parse_int(tok[1]);
            if (s.players < 1) throw ParseError(lineno, "players must be at least 1");
            have_players = true;
        } else if (kw == "measure") {
            arity(2);
            s.measure = measure_from_name(tok[1]);
            if (!s.measure) throw ParseError(lineno, "unknown measure '" + tok[1] + "'");
        } else if (kw == "init") {
            arity(2);
            if (s.init) throw ParseError(lineno, "duplicate 'init'");
            s.init = tok[1];
            s.init_line = lineno;
        } else if (kw == "vertex") {
            arity(3);
            if (!valid_vertex_id(tok[1])) throw ParseError(lineno, "invalid vertex id '" + tok[1] + "'");
            s.vertices.push_back({tok[1], parse_int(tok[2]), lineno});
        } else if (kw == "edge") {
            if (tok.size() < 3) throw ParseError(lineno, "'edge' expects src, dst and weights");
            GameSpec::Edge e{tok[1], tok[2], {}, lineno};
            for (std::size_t i = 3; i < tok.size(); ++i) {
                try {
                    e.w.push_back(Rational::parse(tok[i]));
                } catch (const std::exception& ex) {
                    throw ParseError(lineno, ex.what());
                }
            }
            s.edges.push_back(std::move(e));
        } else {
            throw ParseError(lineno, "unknown directive '" + kw + "'");
        }
    }
    if (!have_players) throw ParseError(0, "missing players");
    return s;
}

Game parse_game(std::string_view text) { return Game(parse_game_spec(text)); }

Game load_game(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        return parse_game(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(e.line, path + ": " + std::string(e.what()));
    }
}

std::string serialize_game(const Game& g) {
    std::ostringstream o;
    o << "players " << g.players() << "\n";
    o << "measure " << measure_name(g.measure()) << "\n";
    o << "init " << g.name(g.init()) << "\n";
    for (int v = 0; v < g.size(); ++v) o << "vertex " << g.name(v) << " " << g.owner(v) << "\n";
    for (auto& e : g.edges()) {
        o << "edge " << g.name(e.src) << " " << g.name(e.dst);
        for (auto& w : e.w) o << " " << w;
        o << "\n";
    }
    return o.str();
}

void check_history(const Game& g, const History& h) {
    if (h.empty()) throw Error("empty history");
    for (int v : h)
        if (v < 0 || v >= g.size()) throw Error("history vertex out of range");
    for (std::size_t k = 0; k + 1 < h.size(); ++k)
        if (!g.edge_between(h[k], h[k + 1]))
            throw Error("history uses missing edge " + g.name(h[k]) + " -> " + g.name(h[k + 1]));
}

void check_lasso(const Game& g, const Lasso& l) {
    if (l.cycle.empty()) throw Error("lasso with empty cycle");
    std::vector<int> seq = l.prefix;
    seq.insert(seq.end(), l.cycle.begin(), l.cycle.end());
    seq.push_back(l.cycle.front());
    for (int v : seq)
        if (v < 0 || v >= g.size()) throw Error("lasso vertex out of range");
    for (std::size_t k = 0; k + 1 < seq.size(); ++k)
        if (!g.edge_between(seq[k], seq[k + 1]))
            throw Error("lasso uses missing edge " + g.name(seq[k]) + " -> " + g.name(seq[k + 1]));
}

std::pair<std::vector<Rational>, std::vector<Rational>> lasso_weights(const Game& g, int player, const Lasso& l) {
    check_lasso(g, l);
    std::vector<Rational> pre, cyc;
    for (std::size_t k = 0; k < l.prefix.size(); ++k) {
        int nxt = k + 1 < l.prefix.size() ? l.prefix[k + 1] : l.cycle.front();
        pre.push_back(g.weight(*g.edge_between(l.prefix[k], nxt), player));
    }
    for (std::size_t k = 0; k < l.cycle.size(); ++k) {
        int nxt = l.cycle[(k + 1) % l.cycle.size()];
        cyc.push_back(g.weight(*g.edge_between(l.cycle[k], nxt), player));
    }
    return {pre, cyc};
}

Rational payoff_of_lasso(Measure m, const Game& g, int player, const Lasso& l) {
    if (player < 1 || player > g.players()) throw Error("player out of range");
    auto [pre, cyc] = lasso_weights(g, player, l);
    switch (m) {
    case Measure::Inf: {
        Rational r = *std::min_element(cyc.begin(), cyc.end());
        for (auto& w : pre) r = std::min(r, w);
        return r;
    }
    case Measure::Sup: {
        Rational r = *std::max_element(cyc.begin(), cyc.end());
        for (auto& w : pre) r = std::max(r, w);
        return r;
    }
    case Measure::LimInf: return *std::min_element(cyc.begin(), cyc.end());
    case Measure::LimSup: return *std::max_element(cyc.begin(), cyc.end());
    case Measure::MeanPayoffInf:
    case Measure::MeanPayoffSup: {
        Rational s = 0;
        for (auto& w : cyc) s += w;
        return s / Rational(static_cast<std::int64_t>(cyc.size()));
    }
    }
    return 0;
}

std::string history_str(const Game& g, const History& h) {
    std::string s;
    for (int v : h) {
        if (!s.empty()) s += ' ';
        s += g.name(v);
    }
    return s;
}

std::string lasso_str(const Game& g, const Lasso& l) {
    std::string s = history_str(g, l.prefix);
    if (!s.empty()) s += ' ';
    return s + "[" + history_str(g, l.cycle) + "]";
}

Lasso parse_lasso(const Game& g, std::string_view text) {
    Lasso l;
    std::string t(text);
    auto open = t.find('[');
    auto close = t.find(']');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw Error("lasso must look like 'a b [c d]'");
    for (auto& id : split_ws(t.substr(0, open))) l.prefix.push_back(g.index_of(id));
    for (auto& id : split_ws(t.substr(open + 1, close - open - 1))) l.cycle.push_back(g.index_of(id));
    check_lasso(g, l);
    return l;
}

} // namespace qadm
