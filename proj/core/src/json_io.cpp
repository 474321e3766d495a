#include "qhtk/json_io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "qhtk/errors.hpp"

namespace qhtk {

namespace {

using nlohmann::json;

std::string num(double v) {
    // JSON has no literals for non-finite values
    if (!std::isfinite(v)) return "null";
    return format_double(v);
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw DomainError("json parse error");
    return j;
}

Quaternion quaternion_from(const json& j) {
    if (!j.is_array() || j.size() != 4 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number() ||
        !j[3].is_number())
        throw DomainError("quaternion must be a 4-array [w,x,y,z]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string quaternion_to_json(const Quaternion& q) {
    return "[" + num(q.w) + "," + num(q.x) + "," + num(q.y) + "," + num(q.z) + "]";
}

std::string qmatrix_to_json(const QMatrix& a) {
    std::string s = "{\"rows\":" + std::to_string(a.rows) + ",\"cols\":" + std::to_string(a.cols) +
                    ",\"entries\":[";
    for (std::size_t t = 0; t < a.entries.size(); ++t) {
        if (t) s += ",";
        s += quaternion_to_json(a.entries[t]);
    }
    s += "]}";
    return s;
}

QMatrix qmatrix_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw DomainError("matrix json must carry rows, cols, entries");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
        throw DomainError("matrix json: rows and cols must be integers");
    const int rows = j["rows"].get<int>();
    const int cols = j["cols"].get<int>();
    if (rows <= 0 || cols <= 0) throw DomainError("matrix json: rows and cols must be positive");
    const json& entries = j["entries"];
    if (!entries.is_array() || entries.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
        throw DomainError("matrix json: entries must hold rows*cols quaternions");
    QMatrix a(rows, cols);
    for (std::size_t t = 0; t < a.entries.size(); ++t) a.entries[t] = quaternion_from(entries[t]);
    return a;
}

std::string point_to_json(const std::vector<Quaternion>& z) {
    std::string s = "[";
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (i) s += ",";
        s += quaternion_to_json(z[i]);
    }
    s += "]";
    return s;
}

std::vector<Quaternion> point_from_json(const std::string& text, int n) {
    const json j = parse(text);
    if (j.is_array()) {
        if (j.size() != static_cast<std::size_t>(n + 1))
            throw DomainError("point json: homogeneous vector must have n+1 entries");
        std::vector<Quaternion> z(static_cast<std::size_t>(n + 1));
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = quaternion_from(j[i]);
        return z;
    }
    if (j.is_object() && j.contains("xi") && j.contains("v") && j.contains("u")) {
        HorosphericalCoords h;
        const json& xi = j["xi"];
        if (!xi.is_array() || xi.size() != static_cast<std::size_t>(n - 1))
            throw DomainError("point json: xi must hold n-1 quaternions");
        h.xi.resize(xi.size());
        for (std::size_t i = 0; i < h.xi.size(); ++i) h.xi[i] = quaternion_from(xi[i]);
        const json& v = j["v"];
        if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number())
            throw DomainError("point json: v must be a 3-array of the imaginary components");
        h.v = {0.0, v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
        if (!j["u"].is_number()) throw DomainError("point json: u must be a number");
        h.u = j["u"].get<double>();
        return from_horospherical(h);
    }
    throw DomainError("point json: expected a vector of 4-arrays or a horospherical triple");
}

std::string bound_report_to_json(const BoundReport& rep) {
    std::string s = "{";
    s += "\"n\":" + std::to_string(rep.n);
    s += ",\"Q\":" + std::to_string(rep.Q);
    s += ",\"q\":" + std::to_string(rep.q);
    s += ",\"r\":" + num(rep.r);
    s += ",\"delta\":" + num(rep.delta);
    s += ",\"norm_A\":" + num(rep.norm_A);
    s += ",\"norm_Aq\":" + num(rep.norm_Aq);
    s += ",\"norm_Aq_minus_I\":" + num(rep.norm_Aq_minus_I);
    s += ",\"norm_Aq_minus_Rq\":" + num(rep.norm_Aq_minus_Rq);
    s += ",\"lemma_bound\":" + num(rep.lemma_bound);
    s += ",\"corrected_bound\":" + num(rep.corrected_bound);
    s += ",\"product\":" + num(rep.product);
    s += ",\"omega\":" + num(rep.omega);
    s += ",\"verdict\":" + std::string(rep.verdict ? "true" : "false");
    s += ",\"rotation_met\":" + std::string(rep.rotation_met ? "true" : "false");
    s += ",\"slack_norm\":" + num(rep.slack_norm);
    s += ",\"slack_orthogonal\":" + num(rep.slack_orthogonal);
    s += ",\"slack_resume\":" + num(rep.slack_resume);
    s += ",\"worst_case_bound\":" + num(rep.worst_case_bound);
    s += "}";
    return s;
}

std::string bound_constants_to_json(const BoundConstants& c, const MarginResult& m) {
    std::string s = "{";
    s += "\"tau\":" + num(c.tau);
    s += ",\"omega\":" + num(c.omega);
    s += ",\"lambda_n\":" + num(c.lambda_n);
    s += ",\"margin_bound\":" + num(m.bound);
    s += ",\"margin_verdict\":" + std::string(m.verdict ? "true" : "false");
    s += "}";
    return s;
}

std::string volume_result_to_json(const VolumeResult& v) {
    std::string s = "{";
    s += "\"n\":" + std::to_string(v.n);
    s += ",\"R\":" + num(v.R);
    s += ",\"volume\":" + num(v.volume);
    s += ",\"log_volume\":" + num(v.log_volume);
    s += ",\"sigma_4n\":" + num(v.sigma_4n);
    s += "}";
    return s;
}

std::string manifold_bound_to_json(const ManifoldBound& b) {
    std::string s = "{";
    s += "\"n\":" + std::to_string(b.n);
    s += ",\"lambda_n\":" + num(b.lambda_n);
    s += ",\"radius\":" + num(b.radius);
    s += ",\"volume_recomputed\":" + num(b.volume_recomputed);
    s += ",\"log_volume_recomputed\":" + num(b.log_volume_recomputed);
    s += ",\"volume_printed\":" + num(b.volume_printed);
    s += ",\"log_volume_printed\":" + num(b.log_volume_printed);
    s += "}";
    return s;
}

std::string bound_report_csv_header() { return "n,Q,q,delta,r,product,lemma_bound,omega,verdict"; }

std::string bound_report_csv_row(const BoundReport& rep) {
    return std::to_string(rep.n) + "," + std::to_string(rep.Q) + "," + std::to_string(rep.q) + "," +
           format_double(rep.delta) + "," + format_double(rep.r) + "," + format_double(rep.product) + "," +
           format_double(rep.lemma_bound) + "," + format_double(rep.omega) + "," +
           (rep.verdict ? "true" : "false");
}

std::string volume_csv_header() { return "n,R,volume"; }

std::string volume_csv_row(const VolumeResult& v) {
    return std::to_string(v.n) + "," + format_double(v.R) + "," + format_double(v.volume);
}

std::string manifold_csv_header() { return "n,lambda_n,radius,volume_recomputed,volume_printed"; }

std::string manifold_csv_row(const ManifoldBound& b) {
    return std::to_string(b.n) + "," + format_double(b.lambda_n) + "," + format_double(b.radius) + "," +
           format_double(b.volume_recomputed) + "," + format_double(b.volume_printed);
}

} // namespace qhtk
