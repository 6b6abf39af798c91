#pragma once

#include "iwasawa/characters.hpp"

#include <string>
#include <vector>

namespace iwasawa {

// One newform (Galois orbit) row of a modular-forms-database space query.
struct NewformRecord {
    std::string label;           // e.g. "3.7.b.a"
    long dim = 0;                // degree of the coefficient field
    bool cm = false;             // self-twist by an imaginary quadratic field
    std::vector<long> cm_discs;  // the CM discriminants, empty when none
    std::vector<long> traces;    // header of the trace-of-a_n sequence
};

// Parsed summary of the newform space S_k(Gamma_1(N), chi). The raw response
// body is cached verbatim before parsing; `source` records where the bytes
// came from (file path or request URL).
struct NewformSpaceSummary {
    long N = 0;
    long k = 0;
    std::string charLabel;
    std::vector<NewformRecord> forms;
    std::string source;
};

// Lookup order: cacheDir, then fixturesDir, then the live API unless offline.
// Live responses are written into cacheDir when it is set, so a later offline
// run reproduces the same bytes.
struct FetchOptions {
    bool offline = false;
    std::string cacheDir;     // env IWASAWA_CACHE_DIR
    std::string fixturesDir;  // env IWASAWA_FIXTURES_DIR, else the shipped fixtures/
    std::string baseUrl;      // env LMFDB_BASE_URL, else the public instance
};
FetchOptions fetch_options_from_env();

// Database orbit label of the character: "a" for trivial; "b" for the
// quadratic character modulo an odd prime (the character group is cyclic, so
// the unique order-2 orbit sorts directly after the trivial one). Other cases
// are refused rather than guessed.
std::string char_orbit_label(const DirichletChar& chi);

// Fetch the space summary, offline-first per FetchOptions. Throws data_error
// on HTTP failure with no local copy, on malformed or schema-drifted payloads,
// and distinctly on a space that is not in the database (empty data array).
NewformSpaceSummary fetch_space(long N, long k, const std::string& charLabel,
                                const FetchOptions& opt);

// Rank-one/CM evidence for the ordinary Eisenstein component at (N, p): the
// weight-p specialization check. verdict is true iff the space S_p(Gamma_1(N),
// chi) holds exactly one newform, it has CM by the quadratic field of chi, and
// its coefficient ring completes to Z_p-rank one (dim 1). This is evidence
// from database facts, not a proof; raw counts are reported so a reviewer can
// audit. Requires p an odd prime coprime to N*phi(N), Np >= 5, chi odd
// quadratic of conductor N with chi(p) = 1; each violation is named.
struct GorensteinEvidence {
    bool verdict = false;
    long dim = 0;      // total dimension of the newform space
    long cmForms = 0;  // newform orbits with CM
    bool zpRankOne = false;
    std::vector<std::string> citations;
};
GorensteinEvidence gorenstein_evidence(long N, long p, const DirichletChar& chi,
                                       const FetchOptions& opt);

}  // namespace iwasawa
