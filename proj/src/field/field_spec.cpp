#include "qmsieve/field/field_spec.hpp"

#include <openssl/evp.h>

#include <cstdio>

namespace qms {

namespace {

char const* kind_names[] = {"Rationals", "RealQuadratic", "TotallyRealPoly",
                            "Multiquadratic", "RelativeQuadratic", "ExplicitOrder"};

FieldSpec::Kind kind_from(std::string const& s)
{
    for (int i = 0; i < 6; ++i)
        if (s == kind_names[i])
            return static_cast<FieldSpec::Kind>(i);
    throw InvalidInput("unknown field type: " + s);
}

} // namespace

json int_to_json(Int const& a) { return a.get_str(); }

Int int_from_json(json const& j)
{
    if (j.is_number_integer())
        return Int(j.get<long>());
    if (!j.is_string())
        throw InvalidInput("expected an integer");
    Int r;
    if (r.set_str(j.get<std::string>(), 10) != 0)
        throw InvalidInput("malformed integer: " + j.get<std::string>());
    return r;
}

json ints_to_json(std::vector<Int> const& v)
{
    json a = json::array();
    for (auto const& x : v)
        a.push_back(int_to_json(x));
    return a;
}

std::vector<Int> ints_from_json(json const& j)
{
    if (!j.is_array())
        throw InvalidInput("expected an integer list");
    std::vector<Int> v;
    for (auto const& x : j)
        v.push_back(int_from_json(x));
    return v;
}

FieldSpec FieldSpec::rationals() { return FieldSpec{}; }

FieldSpec FieldSpec::real_quadratic(Int const& m)
{
    FieldSpec s;
    s.kind = Kind::RealQuadratic;
    s.m = m;
    return s;
}

FieldSpec FieldSpec::totally_real_poly(IntPolynomial const& p)
{
    FieldSpec s;
    s.kind = Kind::TotallyRealPoly;
    s.poly = p;
    return s;
}

FieldSpec FieldSpec::multiquadratic(std::vector<Int> const& gens)
{
    FieldSpec s;
    s.kind = Kind::Multiquadratic;
    s.gens = gens;
    return s;
}

FieldSpec FieldSpec::relative_quadratic(FieldSpec const& base, IntVector const& delta)
{
    FieldSpec s;
    s.kind = Kind::RelativeQuadratic;
    s.base = std::make_shared<FieldSpec const>(base);
    s.delta = delta;
    return s;
}

FieldSpec FieldSpec::explicit_order(std::vector<std::vector<IntVector>> const& table, Int const& disc)
{
    FieldSpec s;
    s.kind = Kind::ExplicitOrder;
    s.table = table;
    s.disc = disc;
    return s;
}

std::string FieldSpec::kind_name() const { return kind_names[static_cast<int>(kind)]; }

json FieldSpec::to_json() const
{
    json j;
    j["type"] = kind_name();
    switch (kind) {
    case Kind::Rationals:
        break;
    case Kind::RealQuadratic:
        j["m"] = int_to_json(m);
        break;
    case Kind::TotallyRealPoly:
        j["poly"] = ints_to_json(poly.coefficients());
        break;
    case Kind::Multiquadratic:
        j["gens"] = ints_to_json(gens);
        break;
    case Kind::RelativeQuadratic:
        j["base"] = base->to_json();
        j["delta"] = ints_to_json(delta);
        break;
    case Kind::ExplicitOrder: {
        json t = json::array();
        for (auto const& row : table) {
            json r = json::array();
            for (auto const& v : row)
                r.push_back(ints_to_json(v));
            t.push_back(r);
        }
        j["table"] = t;
        j["disc"] = int_to_json(disc);
        break;
    }
    }
    return j;
}

FieldSpec FieldSpec::from_json(json const& j)
{
    if (!j.is_object() || !j.contains("type"))
        throw InvalidInput("field spec needs a \"type\"");
    FieldSpec s;
    s.kind = kind_from(j.at("type").get<std::string>());
    auto allow = [&](std::initializer_list<char const*> keys) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.key() == "type")
                continue;
            bool ok = false;
            for (auto k : keys)
                ok = ok || it.key() == k;
            if (!ok)
                throw InvalidInput("unknown key in field spec: " + it.key());
        }
    };
    switch (s.kind) {
    case Kind::Rationals:
        allow({});
        break;
    case Kind::RealQuadratic:
        allow({"m"});
        s.m = int_from_json(j.at("m"));
        break;
    case Kind::TotallyRealPoly:
        allow({"poly"});
        s.poly = IntPolynomial(ints_from_json(j.at("poly")));
        break;
    case Kind::Multiquadratic:
        allow({"gens"});
        s.gens = ints_from_json(j.at("gens"));
        break;
    case Kind::RelativeQuadratic:
        allow({"base", "delta"});
        s.base = std::make_shared<FieldSpec const>(from_json(j.at("base")));
        s.delta = ints_from_json(j.at("delta"));
        break;
    case Kind::ExplicitOrder:
        allow({"table", "disc"});
        for (auto const& row : j.at("table")) {
            std::vector<IntVector> r;
            for (auto const& v : row)
                r.push_back(ints_from_json(v));
            s.table.push_back(r);
        }
        s.disc = int_from_json(j.at("disc"));
        break;
    }
    return s;
}

std::string FieldSpec::canonical() const { return to_json().dump(); }

std::string FieldSpec::digest() const { return sha256_hex(canonical()); }

std::string sha256_hex(std::string const& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        out += buf;
    }
    return out;
}

} // namespace qms
