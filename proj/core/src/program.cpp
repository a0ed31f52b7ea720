#include "dcled/program.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "dcled/util.hpp"

namespace dcled {

namespace {

constexpr std::uint8_t kKindQuadratic = 0x01;
constexpr std::uint8_t kKindMonomial = 0x02;

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

void check_labels(const std::vector<std::string>& labels) {
    std::unordered_set<std::string_view> seen;
    for (const auto& l : labels)
        require(seen.insert(l).second, "duplicate label in program");
}

// Structural degree: 2 with any quadratic term, 1 with any linear term, 0 otherwise.
int degree_of(const QuadraticProgram& p) {
    if (!p.quad.empty()) return 2;
    if (!p.lin.empty()) return 1;
    return 0;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_fe(std::vector<std::uint8_t>& out, const Field& f, Fe x) {
    const auto b = f.encode(x);
    out.insert(out.end(), b.begin(), b.end());
}

void put_label(std::vector<std::uint8_t>& out, const std::string& l) {
    put_u32(out, static_cast<std::uint32_t>(l.size()));
    out.insert(out.end(), l.begin(), l.end());
}

struct Reader {
    std::span<const std::uint8_t> rest;

    std::uint8_t u8() {
        require(!rest.empty(), "truncated program encoding");
        const std::uint8_t v = rest.front();
        rest = rest.subspan(1);
        return v;
    }
    std::uint32_t u32() {
        require(rest.size() >= 4, "truncated program encoding");
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = v << 8 | rest[static_cast<std::size_t>(i)];
        rest = rest.subspan(4);
        return v;
    }
    Fe fe(const Field& f) {
        require(rest.size() >= f.byte_width(), "truncated program encoding");
        const Fe v = f.decode(rest.subspan(0, f.byte_width()));
        rest = rest.subspan(f.byte_width());
        return v;
    }
    std::string label() {
        const std::uint32_t n = u32();
        require(rest.size() >= n, "truncated program encoding");
        std::string l(reinterpret_cast<const char*>(rest.data()), n);
        rest = rest.subspan(n);
        return l;
    }
};

Fe parse_coeff(const Field& f, std::string_view text) {
    bool negated = false;
    if (!text.empty() && text[0] == '-') {
        negated = true;
        text.remove_prefix(1);
    }
    const Fe v = f.from_u128(parse_u128(text));
    return negated ? f.neg(v) : v;
}

}  // namespace

void normalize(const Field& f, QuadraticProgram& p) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, Fe> quad;
    for (const auto& t : p.quad) {
        auto [it, fresh] = quad.try_emplace({t.i, t.j}, t.alpha);
        if (!fresh) it->second = f.add(it->second, t.alpha);
    }
    std::map<std::uint32_t, Fe> lin;
    for (const auto& t : p.lin) {
        auto [it, fresh] = lin.try_emplace(t.k, t.beta);
        if (!fresh) it->second = f.add(it->second, t.beta);
    }
    p.quad.clear();
    for (const auto& [key, alpha] : quad) p.quad.push_back({key.first, key.second, alpha});
    p.lin.clear();
    for (const auto& [k, beta] : lin) p.lin.push_back({k, beta});
}

void validate(const Field& f, const QuadraticProgram& p) {
    check_labels(p.labels);
    const auto n = static_cast<std::uint32_t>(p.labels.size());
    std::pair<std::uint32_t, std::uint32_t> prev_q{0, 0};
    for (const auto& t : p.quad) {
        require(t.i >= 1 && t.i <= n && t.j >= 1 && t.j <= n, "term index out of range");
        require(std::pair{t.i, t.j} > prev_q, "quadratic terms not sorted or not unique");
        prev_q = {t.i, t.j};
        require(t.alpha.v < f.modulus(), "coefficient not canonical");
    }
    std::uint32_t prev_k = 0;
    for (const auto& t : p.lin) {
        require(t.k >= 1 && t.k <= n, "term index out of range");
        require(t.k > prev_k, "linear terms not sorted or not unique");
        prev_k = t.k;
        require(t.beta.v < f.modulus(), "coefficient not canonical");
    }
    require(p.gamma.v < f.modulus(), "coefficient not canonical");
}

void validate(const Field&, const MonomialProgram& p) {
    require(!p.labels.empty(), "monomial program needs at least one label");
    check_labels(p.labels);
}

Fe eval_plain(const Field& f, const QuadraticProgram& p, std::span<const Fe> values) {
    require(values.size() == p.labels.size(), "value count does not match program inputs");
    Fe acc = p.gamma;
    for (const auto& t : p.quad)
        acc = f.add(acc, f.mul(t.alpha, f.mul(values[t.i - 1], values[t.j - 1])));
    for (const auto& t : p.lin) acc = f.add(acc, f.mul(t.beta, values[t.k - 1]));
    return acc;
}

Fe eval_plain(const Field& f, const MonomialProgram& p, std::span<const Fe> values) {
    require(values.size() == p.labels.size(), "value count does not match program inputs");
    Fe acc = f.one();
    for (const Fe& v : values) acc = f.mul(acc, v);
    return acc;
}

QuadraticProgram identity_program(std::string label) {
    QuadraticProgram p;
    p.labels.push_back(std::move(label));
    p.lin.push_back({1, Fe{1}});
    return p;
}

QuadraticProgram compose(const Field& f, const QuadraticProgram& outer,
                         const std::vector<QuadraticProgram>& inner) {
    require(outer.labels.size() == inner.size(), "outer arity does not match inner program count");
    for (const auto& p : inner) validate(f, p);

    // Merge the inner label sets; first occurrence fixes the position.
    std::vector<std::string> labels;
    std::unordered_map<std::string, std::uint32_t> position;
    std::vector<std::vector<std::uint32_t>> remap(inner.size());
    for (std::size_t k = 0; k < inner.size(); ++k) {
        remap[k].resize(inner[k].labels.size());
        for (std::size_t a = 0; a < inner[k].labels.size(); ++a) {
            const auto& l = inner[k].labels[a];
            auto [it, fresh] = position.try_emplace(l, static_cast<std::uint32_t>(labels.size() + 1));
            if (fresh) labels.push_back(l);
            remap[k][a] = it->second;
        }
    }

    QuadraticProgram out;
    out.labels = std::move(labels);

    auto add_quad = [&](std::uint32_t i, std::uint32_t j, Fe alpha) {
        out.quad.push_back({i, j, alpha});
    };
    auto add_lin = [&](std::uint32_t k, Fe beta) { out.lin.push_back({k, beta}); };

    // scaled += coeff * P_a * P_b over the merged positions.
    auto add_product = [&](Fe coeff, std::size_t a, std::size_t b) {
        const QuadraticProgram& pa = inner[a];
        const QuadraticProgram& pb = inner[b];
        const int deg = degree_of(pa) + degree_of(pb);
        require(deg <= 2, "composition exceeds quadratic degree");
        if (degree_of(pa) == 2 || degree_of(pb) == 2) {
            // One factor is quadratic, the other a constant.
            const QuadraticProgram& q = degree_of(pa) == 2 ? pa : pb;
            const QuadraticProgram& c = degree_of(pa) == 2 ? pb : pa;
            const auto& qmap = degree_of(pa) == 2 ? remap[a] : remap[b];
            const Fe scale = f.mul(coeff, c.gamma);
            if (scale == f.zero()) return;
            for (const auto& t : q.quad)
                add_quad(qmap[t.i - 1], qmap[t.j - 1], f.mul(scale, t.alpha));
            for (const auto& t : q.lin) add_lin(qmap[t.k - 1], f.mul(scale, t.beta));
            out.gamma = f.add(out.gamma, f.mul(scale, q.gamma));
            return;
        }
        // Both factors are affine.
        for (const auto& ta : pa.lin)
            for (const auto& tb : pb.lin)
                add_quad(remap[a][ta.k - 1], remap[b][tb.k - 1],
                         f.mul(coeff, f.mul(ta.beta, tb.beta)));
        for (const auto& ta : pa.lin) add_lin(remap[a][ta.k - 1], f.mul(coeff, f.mul(ta.beta, pb.gamma)));
        for (const auto& tb : pb.lin) add_lin(remap[b][tb.k - 1], f.mul(coeff, f.mul(tb.beta, pa.gamma)));
        out.gamma = f.add(out.gamma, f.mul(coeff, f.mul(pa.gamma, pb.gamma)));
    };

    out.gamma = f.add(out.gamma, outer.gamma);
    for (const auto& t : outer.quad) {
        if (t.alpha == f.zero()) continue;
        require(t.i >= 1 && t.i <= inner.size() && t.j >= 1 && t.j <= inner.size(),
                "term index out of range");
        add_product(t.alpha, t.i - 1, t.j - 1);
    }
    for (const auto& t : outer.lin) {
        if (t.beta == f.zero()) continue;
        require(t.k >= 1 && t.k <= inner.size(), "term index out of range");
        const QuadraticProgram& pk = inner[t.k - 1];
        for (const auto& q : pk.quad)
            add_quad(remap[t.k - 1][q.i - 1], remap[t.k - 1][q.j - 1], f.mul(t.beta, q.alpha));
        for (const auto& l : pk.lin) add_lin(remap[t.k - 1][l.k - 1], f.mul(t.beta, l.beta));
        out.gamma = f.add(out.gamma, f.mul(t.beta, pk.gamma));
    }

    normalize(f, out);
    validate(f, out);
    return out;
}

std::vector<std::uint8_t> serialize(const Field& f, const QuadraticProgram& p) {
    QuadraticProgram c = p;
    normalize(f, c);
    validate(f, c);
    std::vector<std::uint8_t> out;
    out.push_back(kKindQuadratic);
    put_u32(out, static_cast<std::uint32_t>(c.labels.size()));
    for (const auto& l : c.labels) put_label(out, l);
    put_u32(out, static_cast<std::uint32_t>(c.quad.size()));
    for (const auto& t : c.quad) {
        put_u32(out, t.i);
        put_u32(out, t.j);
        put_fe(out, f, t.alpha);
    }
    put_u32(out, static_cast<std::uint32_t>(c.lin.size()));
    for (const auto& t : c.lin) {
        put_u32(out, t.k);
        put_fe(out, f, t.beta);
    }
    put_fe(out, f, c.gamma);
    return out;
}

std::vector<std::uint8_t> serialize(const Field& f, const MonomialProgram& p) {
    validate(f, p);
    std::vector<std::uint8_t> out;
    out.push_back(kKindMonomial);
    put_u32(out, static_cast<std::uint32_t>(p.labels.size()));
    for (const auto& l : p.labels) put_label(out, l);
    return out;
}

std::vector<std::uint8_t> serialize(const Field& f, const Program& p) {
    return std::visit([&](const auto& q) { return serialize(f, q); }, p);
}

Program parse_program(const Field& f, std::span<const std::uint8_t> bytes) {
    Reader r{bytes};
    const std::uint8_t kind = r.u8();
    if (kind == kKindMonomial) {
        MonomialProgram p;
        const std::uint32_t n = r.u32();
        p.labels.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) p.labels.push_back(r.label());
        require(r.rest.empty(), "trailing bytes after program");
        validate(f, p);
        return p;
    }
    require(kind == kKindQuadratic, "unknown program kind");
    QuadraticProgram p;
    const std::uint32_t n = r.u32();
    p.labels.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) p.labels.push_back(r.label());
    const std::uint32_t nq = r.u32();
    p.quad.reserve(nq);
    for (std::uint32_t i = 0; i < nq; ++i) {
        QuadTerm t;
        t.i = r.u32();
        t.j = r.u32();
        t.alpha = r.fe(f);
        p.quad.push_back(t);
    }
    const std::uint32_t nl = r.u32();
    p.lin.reserve(nl);
    for (std::uint32_t i = 0; i < nl; ++i) {
        LinTerm t;
        t.k = r.u32();
        t.beta = r.fe(f);
        p.lin.push_back(t);
    }
    p.gamma = r.fe(f);
    require(r.rest.empty(), "trailing bytes after program");
    validate(f, p);  // enforces canonical ordering
    return p;
}

Program parse_program_text(const Field& f, std::istream& in) {
    enum class Kind { unset, quadratic, monomial };
    Kind kind = Kind::unset;
    QuadraticProgram q;
    MonomialProgram m;
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) {
        throw std::invalid_argument("program text line " + std::to_string(lineno) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream row(line);
        std::string verb;
        if (!(row >> verb)) continue;
        std::string a, b, c;
        if (verb == "kind") {
            if (!(row >> a) || (a != "quadratic" && a != "monomial")) fail("bad kind");
            if (kind != Kind::unset) fail("duplicate kind line");
            kind = a == "quadratic" ? Kind::quadratic : Kind::monomial;
        } else if (verb == "label") {
            if (!(row >> a)) fail("label needs a name");
            q.labels.push_back(a);
            m.labels.push_back(a);
        } else if (verb == "quad") {
            if (!(row >> a >> b >> c)) fail("quad needs: i j coeff");
            q.quad.push_back({static_cast<std::uint32_t>(parse_u128(a)),
                              static_cast<std::uint32_t>(parse_u128(b)), parse_coeff(f, c)});
        } else if (verb == "lin") {
            if (!(row >> a >> b)) fail("lin needs: k coeff");
            q.lin.push_back({static_cast<std::uint32_t>(parse_u128(a)), parse_coeff(f, b)});
        } else if (verb == "const") {
            if (!(row >> a)) fail("const needs a coeff");
            q.gamma = f.add(q.gamma, parse_coeff(f, a));
        } else {
            fail("unknown directive '" + verb + "'");
        }
        std::string extra;
        if (row >> extra) fail("unexpected trailing token '" + extra + "'");
    }
    if (kind == Kind::monomial) {
        if (!q.quad.empty() || !q.lin.empty() || q.gamma != Fe{0})
            throw std::invalid_argument("monomial programs take only label lines");
        validate(f, m);
        return m;
    }
    normalize(f, q);
    validate(f, q);
    return q;
}

std::string to_program_text(const Field& f, const Program& p) {
    std::ostringstream out;
    if (const auto* m = std::get_if<MonomialProgram>(&p)) {
        out << "kind monomial\n";
        for (const auto& l : m->labels) out << "label " << l << "\n";
        return out.str();
    }
    const auto& q = std::get<QuadraticProgram>(p);
    out << "kind quadratic\n";
    for (const auto& l : q.labels) out << "label " << l << "\n";
    for (const auto& t : q.quad)
        out << "quad " << t.i << " " << t.j << " 0x" << f.to_hex(t.alpha) << "\n";
    for (const auto& t : q.lin) out << "lin " << t.k << " 0x" << f.to_hex(t.beta) << "\n";
    if (!(q.gamma == Fe{0})) out << "const 0x" << f.to_hex(q.gamma) << "\n";
    return out.str();
}

}  // namespace dcled
