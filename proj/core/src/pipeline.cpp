#include "qd/pipeline.hpp"

#include <atomic>
#include <condition_variable>
#include <deque>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace qd {

using ordered_json = nlohmann::ordered_json;

namespace {

Rat rat_from_json(const nlohmann::json& v, const std::string& where) {
    if (v.is_number_integer()) return Rat((long)v.get<long long>());
    if (v.is_string()) return parse_rat(v.get<std::string>());
    fail(errc::parse_error, where + ": expected integer or rational string");
}

std::string rat_json(const Rat& r) { return rat_str(r); }

ordered_json point_json(const CurvePoint& p) {
    return ordered_json::array({rat_json(p.x), rat_json(p.y), rat_json(p.z)});
}

ordered_json ecpoint_json(const ECPoint& p) {
    if (p.inf) return "infinity";
    return ordered_json::array({rat_json(p.x), rat_json(p.y)});
}

ordered_json matrix_json(const Mat3& m) {
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < 3; i++) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < 3; j++) row.push_back(rat_json(m.m[i][j]));
        rows.push_back(row);
    }
    return rows;
}

ordered_json binform_json(const BinForm<Rat>& f) {
    ordered_json c = ordered_json::array();
    for (int i = 0; i <= f.d; i++) c.push_back(rat_json(f.c[(size_t)i]));
    return c;
}

const char* verdict_name(RankVerdict v) {
    switch (v) {
        case RankVerdict::consistent_with_rank0: return "consistent_with_rank0";
        case RankVerdict::rank_positive: return "rank_positive";
        case RankVerdict::assumed_rank0: return "assumed_rank0";
    }
    return "?";
}

const char* outcome_name(G1Outcome o) {
    switch (o) {
        case G1Outcome::point_found: return "point_found";
        case G1Outcome::locally_unsolvable: return "locally_unsolvable";
        case G1Outcome::undetermined: return "undetermined";
    }
    return "?";
}

} // namespace

CurveRecord parse_record(const std::string& line, size_t lineno) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
        fail(errc::parse_error, "line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!j.is_object()) fail(errc::parse_error, "line " + std::to_string(lineno) + ": not a JSON object");
    CurveRecord rec;
    rec.id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>()
                                                     : "record-" + std::to_string(lineno);
    if (!j.contains("type") || !j["type"].is_string())
        fail(errc::parse_error, "line " + std::to_string(lineno) + ": missing \"type\"");
    std::string type = j["type"].get<std::string>();
    if (type == "quartic")
        rec.quartic = true;
    else if (type == "hyperelliptic")
        rec.quartic = false;
    else
        fail(errc::parse_error, "line " + std::to_string(lineno) + ": unknown type '" + type + "'");

    const char* key = rec.quartic ? "coeffs" : "f";
    if (!j.contains(key) || !j[key].is_array())
        fail(errc::parse_error, "line " + std::to_string(lineno) + ": missing \"" + key + "\" array");
    for (const auto& v : j[key]) rec.payload.push_back(rat_from_json(v, rec.id));
    if (rec.quartic && rec.payload.size() != 15)
        fail(errc::parse_error, rec.id + ": quartic needs 15 coefficients, got " +
                                    std::to_string(rec.payload.size()));
    if (!rec.quartic && (rec.payload.empty() || rec.payload.size() > 9))
        fail(errc::parse_error, rec.id + ": hyperelliptic needs 1..9 coefficients");

    if (j.contains("assumed_rank")) {
        if (!j["assumed_rank"].is_number_integer())
            fail(errc::parse_error, rec.id + ": assumed_rank must be an integer");
        rec.assumed_rank = j["assumed_rank"].get<long>();
    }
    if (j.contains("transforms")) {
        if (!j["transforms"].is_array()) fail(errc::parse_error, rec.id + ": transforms must be an array");
        for (const auto& tm : j["transforms"]) {
            if (!tm.is_array() || tm.size() != 3) fail(errc::parse_error, rec.id + ": transform must be 3x3");
            Mat3 m;
            for (int i = 0; i < 3; i++) {
                if (!tm[(size_t)i].is_array() || tm[(size_t)i].size() != 3)
                    fail(errc::parse_error, rec.id + ": transform must be 3x3");
                for (int k = 0; k < 3; k++) m.m[i][k] = rat_from_json(tm[(size_t)i][(size_t)k], rec.id);
            }
            rec.transforms.push_back(m);
        }
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string k = it.key();
        if (k != "id" && k != "type" && k != "coeffs" && k != "f" && k != "assumed_rank" &&
            k != "transforms" && k != "schema")
            rec.warnings.push_back("ignored unknown field \"" + k + "\"");
    }
    return rec;
}

CurveInput curve_from_record(const CurveRecord& rec) {
    if (rec.quartic) {
        std::array<Rat, 15> cs;
        for (int i = 0; i < 15; i++) cs[(size_t)i] = rec.payload[(size_t)i];
        return validate_quartic(cs);
    }
    Poly<Rat> f(rec.payload);
    if (f.deg() < 7) fail(errc::wrong_degree, rec.id + ": y^2 = f(x) needs degree 7 or 8");
    return validate_hyperelliptic(binform_from_poly(f, 8));
}

std::string report_json(const std::string& id, const CurveRecord* rec, const SolveResult& r) {
    ordered_json j;
    j["schema"] = "qd-1";
    j["id"] = id;
    j["type"] = rec && !rec->quartic ? "hyperelliptic" : "quartic";
    j["status"] = status_name(r.status);
    if (!r.status_detail.empty()) j["detail"] = r.status_detail;
    if (rec && !rec->warnings.empty()) j["warnings"] = rec->warnings;

    ordered_json invs = ordered_json::array();
    for (const auto& inv : r.involutions) {
        ordered_json ij;
        ij["kind"] = inv.kind();
        ij["matrix"] = matrix_json(inv.sigma);
        invs.push_back(ij);
    }
    j["involutions"] = invs;
    if (r.ciani.ciani) {
        j["ciani"] = ordered_json::array({rat_json(r.ciani.a1), rat_json(r.ciani.a2), rat_json(r.ciani.a3),
                                          rat_json(r.ciani.b1), rat_json(r.ciani.b2), rat_json(r.ciani.b3)});
    }

    ordered_json quots = ordered_json::array();
    for (const auto& qr : r.quotients) {
        ordered_json qj;
        qj["involution"] = qr.sigma.kind();
        qj["genus1"] = qr.genus1_ok;
        if (!qr.genus1_ok) {
            qj["error"] = qr.genus1_error;
            quots.push_back(qj);
            continue;
        }
        qj["quotient_model"] = binform_json(qr.quotient->D.G);
        qj["psi"] = qr.quotient->psi_formula;
        if (qr.search) {
            qj["point_search"] = outcome_name(qr.search->outcome);
            if (qr.search->point) qj["point"] = point_json(*qr.search->point);
            if (!qr.search->witness.empty()) qj["witness"] = qr.search->witness;
        }
        if (qr.weierstrass) {
            const auto& E = qr.weierstrass->E;
            qj["weierstrass"] = ordered_json::array(
                {rat_json(E.a1), rat_json(E.a2), rat_json(E.a3), rat_json(E.a4), rat_json(E.a6)});
            qj["j_invariant"] = rat_json(E.j());
            qj["maps"] = qr.weierstrass->chain.describe();
            ordered_json exc = ordered_json::array();
            for (const auto& p : qr.weierstrass->exceptional_D) exc.push_back(point_json(p));
            qj["exceptional_points"] = exc;
        }
        if (qr.rank_from_jacobian_invariants) qj["rank_evidence_curve"] = "jacobian_by_invariants";
        if (qr.torsion) {
            qj["torsion_structure"] = qr.torsion->structure;
            ordered_json tp = ordered_json::array();
            for (const auto& p : qr.torsion->points) tp.push_back(ecpoint_json(p));
            qj["torsion_points"] = tp;
        }
        if (qr.rank) {
            ordered_json rj;
            rj["verdict"] = verdict_name(qr.rank->verdict);
            rj["search_bound"] = qr.rank->search_bound;
            rj["primes_used"] = qr.rank->primes_used;
            if (qr.rank->witness) rj["witness"] = ecpoint_json(*qr.rank->witness);
            qj["rank_evidence"] = rj;
        }
        qj["selected"] = qr.selected;
        quots.push_back(qj);
    }
    j["quotients"] = quots;

    ordered_json dps = ordered_json::array();
    for (const auto& p : r.d_points) dps.push_back(point_json(p));
    j["d_points"] = dps;
    ordered_json cps = ordered_json::array();
    for (const auto& p : r.points) cps.push_back(point_json(p));
    j["c_points"] = cps;
    if (r.status == SolveStatusKind::solved) j["n_points"] = (long)r.points.size();

    if (!r.audits.empty()) {
        ordered_json rows = ordered_json::array();
        for (const auto& a : r.audits) {
            ordered_json aj;
            aj["p"] = a.p;
            aj["count"] = a.count;
            aj["genus"] = a.genus;
            aj["rank"] = a.rank;
            aj["rank_inferred"] = a.rank_inferred;
            auto bound_json = [](const BoundValue& b) {
                ordered_json bj;
                bj["value"] = b.value;
                bj["hypotheses_ok"] = b.hypotheses_ok;
                bj["sharp"] = b.sharp;
                return bj;
            };
            if (a.coleman.present) aj["coleman"] = bound_json(a.coleman);
            if (a.stoll.present) aj["stoll"] = bound_json(a.stoll);
            rows.push_back(aj);
        }
        j["bound_audits"] = rows;
    }
    if (r.oracle_height > 0) {
        j["search_oracle"] = ordered_json{{"height", r.oracle_height}, {"agrees", r.oracle_ok}};
    }
    return j.dump();
}

std::string error_report_json(const std::string& id, const std::string& code, const std::string& message) {
    ordered_json j;
    j["schema"] = "qd-1";
    j["id"] = id;
    j["status"] = "error";
    j["error"] = ordered_json{{"code", code}, {"message", message}};
    return j.dump();
}

// --- batch runner ---------------------------------------------------------------

namespace {

struct RecordResult {
    std::string report;
    enum class Cat { pointless, elliptic, rank_positive, not_eligible, undetermined, error } cat;
    long n_points = -1;
    bool parse_failure = false;
    bool internal_failure = false;
};

RecordResult process_line(const std::string& line, size_t lineno, const BatchOptions& opt) {
    RecordResult out;
    std::string id = "record-" + std::to_string(lineno);
    try {
        CurveRecord rec = parse_record(line, lineno);
        id = rec.id;
        CurveInput curve = curve_from_record(rec);
        SolveOptions so = opt.solve;
        if (rec.assumed_rank) so.assumed_rank = rec.assumed_rank;
        for (const auto& t : rec.transforms) so.extra_transforms.push_back(t);
        SolveResult res = solve_curve(curve, so);
        out.report = report_json(id, &rec, res);
        switch (res.status) {
            case SolveStatusKind::solved:
                out.cat = RecordResult::Cat::elliptic;
                out.n_points = (long)res.points.size();
                break;
            case SolveStatusKind::empty_certified: out.cat = RecordResult::Cat::pointless; break;
            case SolveStatusKind::rank_positive_quotient: out.cat = RecordResult::Cat::rank_positive; break;
            case SolveStatusKind::undetermined: out.cat = RecordResult::Cat::undetermined; break;
            case SolveStatusKind::not_eligible: out.cat = RecordResult::Cat::not_eligible; break;
        }
    } catch (const Error& e) {
        out.cat = RecordResult::Cat::error;
        out.report = error_report_json(id, errc_name(e.code()), e.what());
        out.parse_failure = e.code() == errc::parse_error;
        out.internal_failure = e.code() == errc::internal || e.code() == errc::bound_violated;
    } catch (const std::exception& e) {
        out.cat = RecordResult::Cat::error;
        out.report = error_report_json(id, "InternalError", e.what());
        out.internal_failure = true;
    }
    return out;
}

} // namespace

BatchOutcome run_batch(std::istream& in, std::ostream& reports, const BatchOptions& opt) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        lines.push_back(line);
    }

    std::vector<RecordResult> results(lines.size());
    int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        for (size_t i = 0; i < lines.size(); i++) results[i] = process_line(lines[i], i + 1, opt);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= lines.size()) return;
                results[i] = process_line(lines[i], i + 1, opt);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; t++) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    BatchOutcome out;
    for (size_t i = 0; i < results.size(); i++) {
        reports << results[i].report << "\n";
        out.summary.tallies.records++;
        switch (results[i].cat) {
            case RecordResult::Cat::pointless: out.summary.tallies.rank0_pointless++; break;
            case RecordResult::Cat::elliptic: out.summary.tallies.rank0_elliptic++; break;
            case RecordResult::Cat::rank_positive: out.summary.tallies.rank_positive++; break;
            case RecordResult::Cat::not_eligible: out.summary.tallies.not_eligible++; break;
            case RecordResult::Cat::undetermined: out.summary.tallies.undetermined++; break;
            case RecordResult::Cat::error: out.summary.tallies.errors++; break;
        }
        if (results[i].n_points >= 0) out.summary.histogram[results[i].n_points]++;
        out.parse_failures = out.parse_failures || results[i].parse_failure;
        out.internal_failures = out.internal_failures || results[i].internal_failure;
    }
    return out;
}

void emit_summary(const BatchSummary& s, SummaryFormat format, std::ostream& out) {
    if (format == SummaryFormat::csv) {
        out << "category,count\n";
        out << "records," << s.tallies.records << "\n";
        out << "eligible," << s.tallies.eligible() << "\n";
        out << "rank0_pointless_quotient," << s.tallies.rank0_pointless << "\n";
        out << "rank0_elliptic_quotient," << s.tallies.rank0_elliptic << "\n";
        out << "rank_positive_quotient," << s.tallies.rank_positive << "\n";
        out << "not_eligible," << s.tallies.not_eligible << "\n";
        out << "undetermined," << s.tallies.undetermined << "\n";
        out << "error," << s.tallies.errors << "\n";
        for (const auto& [k, v] : s.histogram) out << "histogram_" << k << "," << v << "\n";
        return;
    }
    ordered_json j;
    j["schema"] = "qd-1";
    j["records"] = s.tallies.records;
    ordered_json t;
    t["eligible"] = s.tallies.eligible();
    t["rank0_pointless_quotient"] = s.tallies.rank0_pointless;
    t["rank0_elliptic_quotient"] = s.tallies.rank0_elliptic;
    t["rank_positive_quotient"] = s.tallies.rank_positive;
    t["not_eligible"] = s.tallies.not_eligible;
    t["undetermined"] = s.tallies.undetermined;
    t["error"] = s.tallies.errors;
    j["tallies"] = t;
    ordered_json h = ordered_json::object();
    for (const auto& [k, v] : s.histogram) h[std::to_string(k)] = v;
    j["histogram"] = h;
    out << j.dump() << "\n";
}

std::string convert_colon_line(const std::string& line, size_t lineno) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : line) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() < 3) fail(errc::parse_error, "line " + std::to_string(lineno) + ": expected id:type:coeffs");
    ordered_json j;
    j["id"] = parts[0];
    j["type"] = parts[1];
    ordered_json cs = ordered_json::array();
    for (size_t i = 2; i < parts.size(); i++) cs.push_back(rat_str(parse_rat(parts[i])));
    if (parts[1] == "quartic") {
        if (cs.size() != 15) fail(errc::parse_error, "line " + std::to_string(lineno) + ": quartic needs 15 coefficients");
        j["coeffs"] = cs;
    } else if (parts[1] == "hyperelliptic") {
        j["f"] = cs;
    } else {
        fail(errc::parse_error, "line " + std::to_string(lineno) + ": unknown type '" + parts[1] + "'");
    }
    return j.dump();
}

} // namespace qd
