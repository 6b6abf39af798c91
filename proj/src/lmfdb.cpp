#include "iwasawa/lmfdb.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#ifdef IWASAWA_HAVE_TLS
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"
#include "json.hpp"

#include "iwasawa/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace iwasawa {

namespace {

std::string env_or(const char* name, const std::string& dflt) {
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : dflt;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw data_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

long require_int(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number_integer())
        throw data_error("schema drift: missing integer '" + std::string(key) + "' in " + where);
    return it->get<long>();
}

NewformRecord parse_record(const json& j, const std::string& where) {
    if (!j.is_object()) throw data_error("schema drift: newform record is not an object in " + where);
    NewformRecord rec;
    auto it = j.find("label");
    if (it == j.end() || !it->is_string())
        throw data_error("schema drift: record without string 'label' in " + where);
    rec.label = it->get<std::string>();
    rec.dim = require_int(j, "dim", rec.label);
    if (rec.dim < 1) throw data_error("schema drift: nonpositive 'dim' in " + rec.label);
    it = j.find("is_cm");
    if (it == j.end() || !it->is_boolean())
        throw data_error("schema drift: record without boolean 'is_cm' in " + rec.label);
    rec.cm = it->get<bool>();
    it = j.find("cm_discs");
    if (it != j.end()) {
        if (!it->is_array()) throw data_error("schema drift: 'cm_discs' not an array in " + rec.label);
        for (const json& d : *it) {
            if (!d.is_number_integer())
                throw data_error("schema drift: non-integer CM discriminant in " + rec.label);
            rec.cm_discs.push_back(d.get<long>());
        }
    }
    it = j.find("traces");
    if (it == j.end() || !it->is_array())
        throw data_error("schema drift: record without 'traces' array in " + rec.label);
    for (const json& t : *it) {
        if (!t.is_number_integer())
            throw data_error("schema drift: non-integer trace in " + rec.label);
        rec.traces.push_back(t.get<long>());
    }
    return rec;
}

NewformSpaceSummary parse_summary(long N, long k, const std::string& charLabel,
                                  const std::string& body, const std::string& source) {
    std::string spaceLabel =
        std::to_string(N) + "." + std::to_string(k) + "." + charLabel;
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        throw data_error("malformed JSON for " + spaceLabel + " (" + source + "): " + e.what());
    }
    if (!doc.is_object() || !doc.contains("data") || !doc["data"].is_array())
        throw data_error("schema drift: no 'data' array for " + spaceLabel + " (" + source + ")");
    const json& data = doc["data"];
    if (data.empty())
        throw data_error("space " + spaceLabel + " not in database (" + source + ")");
    NewformSpaceSummary s;
    s.N = N;
    s.k = k;
    s.charLabel = charLabel;
    s.source = source;
    for (const json& rec : data) s.forms.push_back(parse_record(rec, spaceLabel));
    return s;
}

std::string http_get_with_retries(const std::string& baseUrl, const std::string& path) {
    std::string lastErr;
    for (int attempt = 0; attempt < 3; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(250 << attempt));
        httplib::Client cli(baseUrl);
        cli.set_connection_timeout(10);
        cli.set_read_timeout(30);
        cli.set_follow_location(true);
        httplib::Result res = cli.Get(path);
        if (res && res->status == 200) return res->body;
        lastErr = res ? "HTTP " + std::to_string(res->status)
                      : "transport error " + httplib::to_string(res.error());
    }
    throw data_error("GET " + baseUrl + path + " failed after 3 attempts: " + lastErr);
}

}  // namespace

FetchOptions fetch_options_from_env() {
    FetchOptions opt;
    opt.cacheDir = env_or("IWASAWA_CACHE_DIR", "");
    opt.fixturesDir = env_or("IWASAWA_FIXTURES_DIR",
#ifdef IWASAWA_DEFAULT_FIXTURES_DIR
                             IWASAWA_DEFAULT_FIXTURES_DIR
#else
                             "fixtures"
#endif
    );
    opt.baseUrl = env_or("LMFDB_BASE_URL", "https://www.lmfdb.org");
    return opt;
}

std::string char_orbit_label(const DirichletChar& chi) {
    DirichletChar c = chi.primitive();
    if (c.is_trivial()) return "a";
    long N = c.conductor();
    if (c.order() == 2 && N % 2 == 1 && is_prime_long(N)) return "b";
    throw data_error(
        "char_orbit_label: translation implemented for the trivial character and for "
        "quadratic characters modulo an odd prime, not for " +
        c.label());
}

NewformSpaceSummary fetch_space(long N, long k, const std::string& charLabel,
                                const FetchOptions& opt) {
    if (N < 1 || k < 1 || charLabel.empty())
        throw std::invalid_argument("fetch_space: need N >= 1, k >= 1, and a character label");
    std::string fname =
        std::to_string(N) + "." + std::to_string(k) + "." + charLabel + ".json";
    for (const std::string& dir : {opt.cacheDir, opt.fixturesDir}) {
        if (dir.empty()) continue;
        fs::path pth = fs::path(dir) / fname;
        if (fs::exists(pth))
            return parse_summary(N, k, charLabel, read_file(pth), "file:" + pth.string());
    }
    if (opt.offline)
        throw data_error("offline and no cached copy or fixture for " + fname);
    std::string path = "/api/mf_newforms/?level=" + std::to_string(N) +
                       "&weight=" + std::to_string(k) +
                       "&char_orbit_label=" + charLabel + "&_format=json";
    std::string body = http_get_with_retries(opt.baseUrl, path);
    if (!opt.cacheDir.empty()) {
        fs::create_directories(opt.cacheDir);
        std::ofstream out(fs::path(opt.cacheDir) / fname, std::ios::binary);
        out << body;  // verbatim, before any parsing
    }
    return parse_summary(N, k, charLabel, body, opt.baseUrl + path);
}

GorensteinEvidence gorenstein_evidence(long N, long p, const DirichletChar& chi,
                                       const FetchOptions& opt) {
    if (!is_prime_long(p) || p == 2)
        throw std::invalid_argument("gorenstein_evidence: p must be an odd prime");
    if (N < 1) throw std::invalid_argument("gorenstein_evidence: N must be positive");
    if (N % p == 0 || euler_phi(N) % p == 0)
        throw std::invalid_argument(
            "gorenstein_evidence: hypothesis 'p does not divide N*phi(N)' fails");
    if (N * p < 5)
        throw std::invalid_argument("gorenstein_evidence: hypothesis 'Np >= 5' fails");
    DirichletChar c = chi.primitive();
    if (c.conductor() != N)
        throw std::invalid_argument("gorenstein_evidence: chi must have conductor N");
    if (c.order() != 2 || c.is_even())
        throw std::invalid_argument("gorenstein_evidence: chi must be odd quadratic");
    if (c.exponent_in(p, 2) != 0)
        throw std::invalid_argument("gorenstein_evidence: chi(p) = 1 (split p) is required");

    NewformSpaceSummary s = fetch_space(N, p, char_orbit_label(c), opt);
    GorensteinEvidence ev;
    ev.citations.push_back(s.source);
    long fieldDisc = (N % 4 == 3) ? -N : -4 * N;
    bool cmMatch = false;
    for (const NewformRecord& f : s.forms) {
        ev.dim += f.dim;
        if (f.cm) ++ev.cmForms;
        for (long d : f.cm_discs)
            if (d == fieldDisc) cmMatch = true;
        ev.citations.push_back(f.label);
    }
    ev.zpRankOne = s.forms.size() == 1 && s.forms[0].dim == 1;
    ev.verdict = s.forms.size() == 1 && ev.cmForms == 1 && cmMatch && ev.zpRankOne;
    return ev;
}

}  // namespace iwasawa
