#include "fusion/io.hpp"

#include <cctype>
#include <cstdio>

#include "fusion/grading.hpp"
#include "fusion/tlj_analysis.hpp"

namespace fusion {

namespace {

constexpr const char* kSchemaVersion = "1";
constexpr const char* kToolVersion = "0.1.0";

[[noreturn]] void schema_error(const std::string& path,
                               const std::string& what) {
    throw ValidationError("ring spec error at " + path + ": " + what);
}

Rat get_rational(const Json& j, const std::string& path) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_number_float()) {
        // Finite doubles are dyadic rationals; convert exactly.
        return Rat(j.get<double>());
    }
    schema_error(path, "expected a number or rational string");
}

Json rational_to_json(const Rat& r) {
    if (denominator(r) == 1 && abs(numerator(r)) < BigInt(1) << 53)
        return Json(numerator(r).convert_to<long long>());
    return Json(rational_to_string(r));
}

ParsedRing parse_ring_spec_at(const Json& spec, const std::string& path);

ParsedRing parse_group_spec(const Json& spec, const std::string& path) {
    if (!spec.contains("family")) schema_error(path, "group needs 'family'");
    const std::string family = spec.at("family").get<std::string>();
    Json canon{{"kind", "group"}, {"family", family}};
    RingPtr ring;
    if (family == "Z") {
        ring = build_group_z();
    } else if (family == "Zn") {
        int n = spec.value("n", 0);
        ring = build_group_zn(n);
        canon["n"] = n;
    } else if (family == "Zd") {
        int d = spec.value("d", 0);
        ring = build_group_zd(d);
        canon["d"] = d;
    } else if (family == "free") {
        int g = spec.value("generators", 0);
        ring = build_free_group(g);
        canon["generators"] = g;
    } else if (family == "table") {
        if (!spec.contains("table")) schema_error(path, "missing 'table'");
        auto table = spec.at("table").get<std::vector<std::vector<int>>>();
        std::vector<std::string> names =
            spec.value("names", std::vector<std::string>{});
        std::vector<int> gens = spec.value("generators", std::vector<int>{});
        ring = build_group_table(table, names, gens);
        canon["table"] = table;
        if (!names.empty()) canon["names"] = names;
        if (!gens.empty()) canon["generators"] = gens;
    } else {
        schema_error(path + "/family", "unknown group family '" + family + "'");
    }
    return {ring, canon};
}

ParsedRing parse_ring_spec_at(const Json& spec, const std::string& path) {
    if (!spec.is_object()) schema_error(path, "expected an object");
    if (!spec.contains("kind")) schema_error(path, "missing 'kind'");
    const std::string kind = spec.at("kind").get<std::string>();

    if (kind == "tlj_ainf") {
        if (!spec.contains("lambda_inv"))
            schema_error(path, "tlj_ainf needs 'lambda_inv'");
        Rat li = get_rational(spec.at("lambda_inv"), path + "/lambda_inv");
        return {build_tlj_ainf(li),
                Json{{"kind", "tlj_ainf"}, {"lambda_inv", rational_to_json(li)}}};
    }
    if (kind == "tlj_finite") {
        int m = spec.value("m", 0);
        return {build_tlj_finite(m), Json{{"kind", "tlj_finite"}, {"m", m}}};
    }
    if (kind == "group") return parse_group_spec(spec, path);
    if (kind == "su_n") {
        int n = spec.value("n", 0);
        double q = spec.value("q", 1.0);
        return {build_sun(n, q), Json{{"kind", "su_n"}, {"n", n}, {"q", q}}};
    }
    if (kind == "product" || kind == "free_product") {
        if (!spec.contains("factors") || !spec.at("factors").is_array() ||
            spec.at("factors").size() != 2)
            schema_error(path + "/factors", "expected exactly two factors");
        ParsedRing a =
            parse_ring_spec_at(spec.at("factors")[0], path + "/factors/0");
        ParsedRing b =
            parse_ring_spec_at(spec.at("factors")[1], path + "/factors/1");
        RingPtr ring = kind == "product" ? build_product(a.ring, b.ring)
                                         : build_free_product(a.ring, b.ring);
        return {ring,
                Json{{"kind", kind}, {"factors", Json::array({a.spec, b.spec})}}};
    }
    schema_error(path + "/kind", "unknown ring kind '" + kind + "'");
}

} // namespace

ParsedRing parse_ring_spec(const Json& spec) {
    ParsedRing pr = parse_ring_spec_at(spec, "");
    pr.spec["schema_version"] = kSchemaVersion;
    validate_ring(*pr.ring, 3, 32);
    return pr;
}

ParsedRing parse_ring_spec_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("ring spec is not valid JSON: ") +
                              e.what());
    }
    return parse_ring_spec(j);
}

RingPtr parse_subring_spec(const Json& spec, const RingPtr& ring) {
    if (!spec.is_object() || !spec.contains("kind"))
        throw ValidationError("subring spec needs 'kind'");
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "grading_kernel") {
        int modulus = spec.value("modulus", 0);
        GradingMap g = canonical_grading(ring, modulus);
        return grading_kernel(ring, g);
    }
    throw ValidationError("unknown subring kind '" + kind + "'");
}

Multiplier parse_multiplier_spec(const Json& spec, const RingPtr& ring) {
    if (!spec.is_object() || !spec.contains("kind"))
        throw ValidationError("multiplier spec needs 'kind'");
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "regular") return regular_multiplier(ring);
    if (kind == "trivial") return trivial_multiplier(ring);
    if (kind == "point") {
        if (!spec.contains("t")) throw ValidationError("point needs 't'");
        Rat t = get_rational(spec.at("t"), "/t");
        return phi_point(ring, t);
    }
    if (kind == "measure") {
        if (!spec.contains("atoms"))
            throw ValidationError("measure needs 'atoms'");
        std::vector<MeasureAtom> atoms;
        for (const auto& a : spec.at("atoms")) {
            if (!a.is_array() || a.size() != 2)
                throw ValidationError("measure atom must be [t, w]");
            atoms.push_back(
                {get_rational(a[0], "/atoms/t"), get_rational(a[1], "/atoms/w")});
        }
        return multiplier_from_measure(ring, atoms);
    }
    if (kind == "table") {
        std::map<Label, CRat> values;
        for (const auto& row : spec.value("values", Json::array())) {
            if (!row.is_array() || row.size() < 2)
                throw ValidationError("table row must be [label, re, im?]");
            Label l = ring->label_from_string(row[0].get<std::string>());
            Rat re = get_rational(row[1], "/values/re");
            Rat im = row.size() > 2 ? get_rational(row[2], "/values/im") : Rat(0);
            values[l] = CRat(re, im);
        }
        CRat def(0);
        if (spec.contains("default"))
            def = CRat(get_rational(spec.at("default"), "/default"));
        return table_multiplier(ring, std::move(values), def);
    }
    if (kind == "free_product") {
        if (!spec.contains("parts") || spec.at("parts").size() != 2)
            throw ValidationError("free_product needs two 'parts'");
        Rat r = spec.contains("r") ? get_rational(spec.at("r"), "/r") : Rat(1);
        Multiplier p1 =
            parse_multiplier_spec(spec.at("parts")[0], free_product_factor(*ring, 0));
        Multiplier p2 =
            parse_multiplier_spec(spec.at("parts")[1], free_product_factor(*ring, 1));
        return free_product_multiplier(ring, p1, p2, r);
    }
    if (kind == "extend_zero") {
        if (!spec.contains("subring") || !spec.contains("inner"))
            throw ValidationError("extend_zero needs 'subring' and 'inner'");
        RingPtr sub = parse_subring_spec(spec.at("subring"), ring);
        Multiplier inner = parse_multiplier_spec(spec.at("inner"), sub);
        return extend_by_zero(ring, sub, inner);
    }
    throw ValidationError("unknown multiplier kind '" + kind + "'");
}

Multiplier parse_multiplier_spec_text(const std::string& text,
                                      const RingPtr& ring) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(
            std::string("multiplier spec is not valid JSON: ") + e.what());
    }
    return parse_multiplier_spec(j, ring);
}

FusionElement parse_element(const RingPtr& ring, const std::string& text) {
    FusionElement out(ring);
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParamError("empty element");

    if (s == "X") {
        if (!tlj_lambda_inv(*ring))
            throw ParamError("'X' shorthand needs a tlj_ainf ring");
        out.add(Label{{0}}, CRat(1));
        out.add(Label{{1}}, CRat(1));
        return out;
    }

    size_t pos = 0;
    bool negative = false;
    while (pos < s.size()) {
        // term = [coef '*'] label
        size_t end = pos;
        int depth = 0;
        while (end < s.size()) {
            char c = s[end];
            if (c == '(' || c == '[') ++depth;
            if (c == ')' || c == ']') --depth;
            if (depth == 0 && (c == '+' || (c == '-' && end > pos))) break;
            ++end;
        }
        std::string term = s.substr(pos, end - pos);
        CRat coeff(1);
        auto star = term.find('*');
        std::string label_text = term;
        if (star != std::string::npos) {
            coeff = CRat(parse_rational(term.substr(0, star)));
            label_text = term.substr(star + 1);
        }
        if (negative) coeff = CRat(0) - coeff;
        if (label_text.empty()) throw ParamError("element term without label");
        Label lab;
        try {
            lab = ring->label_from_string(label_text);
        } catch (const LabelError&) {
            // "-H1" style term: sign folded into the coefficient.
            if (star == std::string::npos && label_text.size() > 1 &&
                label_text[0] == '-') {
                lab = ring->label_from_string(label_text.substr(1));
                coeff = CRat(0) - coeff;
            } else {
                throw;
            }
        }
        out.add(lab, coeff);
        if (end < s.size()) {
            negative = s[end] == '-';
            pos = end + 1;
        } else {
            pos = end;
        }
    }
    return out;
}

Json make_envelope(const std::string& command, Json inputs, Json result,
                   Json witnesses, Json tolerances) {
    Json env;
    env["command"] = command;
    env["inputs"] = std::move(inputs);
    env["result"] = std::move(result);
    env["witnesses"] = std::move(witnesses);
    env["tolerances"] = std::move(tolerances);
    env["versions"] = {{"schema", kSchemaVersion}, {"tool", kToolVersion}};
    return env;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace fusion
