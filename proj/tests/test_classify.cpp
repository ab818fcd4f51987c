#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "classify.hpp"

#include <algorithm>

using namespace octic;

namespace {

bool same_sing(const CyclicQuotient& a, const CyclicQuotient& b) {
    return a == b || a == b.dual_form();
}

CaseVerdict run(const std::string& spec, std::optional<BranchCase> c = std::nullopt) {
    return classify_surface(parse_surface(spec), c);
}

}  // namespace

TEST_CASE("octic degree of the branch class") {
    CHECK(octic_degree(parse_surface("P:1,1,1")) == 8);
    CHECK(octic_degree(parse_surface("P:1,1,2")) == 16);
    CHECK(octic_degree(parse_surface("P:1,2,5")) == 80);
    CHECK(octic_degree(parse_surface("HP:5")) == 40);
    CHECK(octic_degree(parse_surface("HP:13")) == 104);
    CHECK(octic_degree(parse_surface("HPpair:5,29")) == 8 * 5 * 29);
}

TEST_CASE("sweep oracle on the small words") {
    struct Row {
        MutationWord w;
        std::array<Int, 3> triple;
        bool exceptional;
        Rat min_interior;
    };
    std::vector<Row> rows = {
        {{}, {1, 2, 5}, true, 1},
        {{1}, {1, 5, 13}, true, 0},
        {{0}, {2, 5, 29}, true, 0},
        {{1, 1}, {1, 13, 34}, true, -1},
        {{1, 0}, {5, 13, 194}, false, -10},
        {{0, 1}, {5, 29, 433}, false, -5},
        {{0, 0}, {2, 29, 169}, false, -2},
        {{1, 1, 0}, {13, 34, 1325}, false, -26},
        {{1, 1, 1}, {1, 34, 89}, false, -3},
    };
    for (const Row& row : rows) {
        CAPTURE(word_str(row.w));
        SweepRecord r = sweep_word(row.w);
        CHECK(r.triple.sorted() == row.triple);
        CHECK(r.exceptional == row.exceptional);
        CHECK(r.min_interior == row.min_interior);
        CHECK(r.oracle_nonnormal == !row.exceptional);
        CHECK(r.certificate_holds == !row.exceptional);
        CHECK(r.agree());
    }
}

TEST_CASE("witness points of the governing base words") {
    CHECK(sweep_witness({0, 0}) == Vec{-1, 1});
    CHECK(sweep_witness({0, 1}) == Vec{13, 1});
    CHECK(sweep_witness({1, 0}) == Vec{0, 1});
    CHECK(sweep_witness({1, 1}) == std::nullopt);
    CHECK(sweep_witness({1, 1, 0}) == Vec{0, 1});
    CHECK(sweep_witness({1, 1, 1}) == Vec{14, 1});
    CHECK(sweep_witness({1}) == std::nullopt);
    // The certificate for (1,34,89) at its witness point.
    PersistenceCertificate cert = persistence_certificate({1, 1, 1}, Vec{14, 1});
    CHECK(cert.holds());
    CHECK(cert.coords.n1 == -3);
}

TEST_CASE("non-normality sweep is consistent and matches its serial run") {
    SweepResult par = nonnormality_sweep(5);
    SweepResult ser = nonnormality_sweep_serial(5);
    CHECK(par.consistent);
    CHECK(ser.consistent);
    CHECK(par.records.size() == ser.records.size());
    for (size_t i = 0; i < par.records.size(); ++i) {
        CHECK(par.records[i].word == ser.records[i].word);
        CHECK(par.records[i].min_interior == ser.records[i].min_interior);
        CHECK(par.records[i].certificate_holds == ser.records[i].certificate_holds);
    }
    CHECK(par.survivors == ser.survivors);
    CHECK(par.survivors == sweep_exceptions());
}

TEST_CASE("generic covers over the large half-point surfaces are not log canonical") {
    CaseVerdict v13 = run("HP:13");
    CHECK(v13.verdict == Verdict::NotLogCanonical);
    REQUIRE(v13.chain_report);
    CHECK(v13.chain_report->alpha[1] == Rat(-31, 26));
    CHECK(v13.chain_report->alpha[2] == Rat(-14, 13));

    CaseVerdict v29 = run("HP:29");
    CHECK(v29.verdict == Verdict::NotLogCanonical);
    REQUIRE(v29.chain_report);
    CHECK(v29.chain_report->alpha[1] == Rat(-31, 29));

    CaseVerdict v34 = run("HP:34");
    CHECK(v34.verdict == Verdict::NotLogCanonical);
    REQUIRE(v34.chain_report);
    CHECK(v34.chain_report->alpha[1] == Rat(-2629, 2312));
}

TEST_CASE("degenerations inherit the parent's verdict") {
    for (const char* s : {"P:2,5,29", "HPpair:5,29", "HPpair:2,29"}) {
        CAPTURE(s);
        auto parent = degeneration_parent(parse_surface(s));
        REQUIRE(parent);
        CHECK(parent->str() == "HP:29");
        CHECK(run(s).verdict == Verdict::NotLogCanonical);
    }
    auto p13 = degeneration_parent(parse_surface("P:1,5,13"));
    REQUIRE(p13);
    CHECK(p13->str() == "HP:13");
    auto p34 = degeneration_parent(parse_surface("P:1,13,34"));
    REQUIRE(p34);
    CHECK(p34->str() == "HP:34");
    CHECK(!degeneration_parent(parse_surface("P:1,2,5")));
    CHECK(!degeneration_parent(parse_surface("HP:29")));
}

TEST_CASE("degree 16: case analysis over P(1,1,4)") {
    CaseVerdict i = run("P:1,1,2", BranchCase::I);
    CHECK(i.verdict == Verdict::NormalLC);
    REQUIRE(i.basket.size() == 2);
    CHECK(same_sing(i.basket[0], CyclicQuotient(4, 1)));
    CHECK(same_sing(i.basket[1], CyclicQuotient(4, 1)));
    REQUIRE(i.chain_report);
    CHECK(i.chain_report->alpha == VecQ{Rat(-1, 2)});

    CaseVerdict iia = run("P:1,1,2", BranchCase::IIa);
    CHECK(iia.verdict == Verdict::NormalLC);
    CHECK(iia.basket.empty());
    REQUIRE(iia.cover_family);
    CHECK(iia.cover_family->kind == FamilyMatch::StarIIa);
    CHECK(iia.cover_alpha.at("C") == -1);

    CaseVerdict iib = run("P:1,1,2", BranchCase::IIb);
    CHECK(iib.verdict == Verdict::NormalLC);
    REQUIRE(iib.cover_family);
    CHECK(iib.cover_family->kind == FamilyMatch::ChainIIb);
    CHECK(iib.cover_family->t1 == 1);

    CaseVerdict iic = run("P:1,1,2", BranchCase::IIc);
    CHECK(iic.verdict == Verdict::NormalLC);
    REQUIRE(iic.cover_family);
    CHECK(iic.cover_family->kind == FamilyMatch::ForkIIc);
    CHECK(iic.cover_family->t1 == 1);
    CHECK(iic.cover_family->t2 == 1);

    CaseVerdict iid = run("P:1,1,2", BranchCase::IId);
    CHECK(iid.verdict == Verdict::NotLogCanonical);
    Rat lo_d = 0;
    for (const auto& [id, a] : iid.cover_alpha) lo_d = std::min(lo_d, a);
    CHECK(lo_d == Rat(-3, 2));

    CaseVerdict iie = run("P:1,1,2", BranchCase::IIe);
    CHECK(iie.verdict == Verdict::NotLogCanonical);
    Rat lo_e = 0;
    for (const auto& [id, a] : iie.cover_alpha) lo_e = std::min(lo_e, a);
    CHECK(lo_e == -2);

    CaseVerdict iii = run("P:1,1,2", BranchCase::III);
    CHECK(iii.verdict == Verdict::NotLogCanonical);
    REQUIRE(iii.chain_report);
    CHECK(iii.chain_report->alpha == VecQ{Rat(-3, 2)});
}

TEST_CASE("degree 80: case analysis over P(1,4,25)") {
    CaseVerdict i = run("P:1,2,5", BranchCase::I);
    CHECK(i.verdict == Verdict::NormalLC);
    REQUIRE(i.basket.size() == 3);
    CHECK(same_sing(i.basket[0], CyclicQuotient(50, 29)));
    CHECK(same_sing(i.basket[1], CyclicQuotient(4, 1)));
    CHECK(same_sing(i.basket[2], CyclicQuotient(4, 1)));

    for (BranchCase c : {BranchCase::IIa, BranchCase::IIb, BranchCase::IIc}) {
        CAPTURE(case_str(c));
        CaseVerdict v = run("P:1,2,5", c);
        CHECK(v.verdict == Verdict::NormalLC);
        REQUIRE(v.basket.size() == 1);
        CHECK(same_sing(v.basket[0], CyclicQuotient(50, 29)));
        // The quarter-point boundary curve joins the branch with multiplicity 1.
        REQUIRE(v.branch_components.size() == 1);
        CHECK(v.branch_components[0].label == "e_x");
        CHECK(v.branch_components[0].mult == 1);
    }
    CHECK(run("P:1,2,5", BranchCase::IId).verdict == Verdict::NotLogCanonical);
    CHECK(run("P:1,2,5", BranchCase::IIe).verdict == Verdict::NotLogCanonical);

    CaseVerdict iii = run("P:1,2,5", BranchCase::III);
    CHECK(iii.verdict == Verdict::NonNormal);
    REQUIRE(iii.branch_components.size() == 1);
    CHECK(iii.branch_components[0].label == "e_x");
    CHECK(iii.branch_components[0].mult == 5);

    CaseVerdict iv = run("P:1,2,5", BranchCase::IV);
    CHECK(iv.verdict == Verdict::NotLogCanonical);
    REQUIRE(iv.chain_report);
    CHECK(iv.chain_report->alpha ==
          VecQ{Rat(-9, 10), Rat(-13, 10), Rat(-6, 5), Rat(-3, 5)});
}

TEST_CASE("half point of index five") {
    CaseVerdict i = run("HP:5", BranchCase::I);
    CHECK(i.verdict == Verdict::NormalLC);
    REQUIRE(i.basket.size() == 1);
    CHECK(same_sing(i.basket[0], CyclicQuotient(50, 29)));

    CaseVerdict iv = run("HP:5", BranchCase::IV);
    CHECK(iv.verdict == Verdict::NotLogCanonical);
    REQUIRE(iv.chain_report);
    CHECK(iv.chain_report->alpha[1] == Rat(-13, 10));
}

TEST_CASE("plane stays smooth") {
    CaseVerdict v = run("P:1,1,1");
    CHECK(v.verdict == Verdict::NormalLC);
    CHECK(v.basket.empty());
    CHECK(v.branch_components.empty());
}

TEST_CASE("case labels are validated") {
    CHECK_THROWS_AS(case_support(parse_surface("HP:13"), BranchCase::I),
                    std::invalid_argument);
    CHECK_THROWS_AS(case_support(parse_surface("P:1,1,2"), BranchCase::IV),
                    std::invalid_argument);
    CHECK(surface_cases(parse_surface("P:1,1,2")).size() == 7);
    CHECK(surface_cases(parse_surface("P:1,2,5")).size() == 8);
    CHECK(surface_cases(parse_surface("HP:5")).size() == 2);
    CHECK(surface_cases(parse_surface("HP:29")).size() == 1);
    CHECK(parse_case("IIb") == BranchCase::IIb);
    CHECK(!parse_case("V"));
}

TEST_CASE("the assembled classification closes") {
    ClassificationReport rep = full_classification(6);
    CHECK(rep.theta_basis == 45);
    CHECK(rep.moduli_dim == 44);
    CHECK(rep.smooth_dim == 36);
    CHECK(rep.sweep.consistent);
    CHECK(rep.survivors ==
          std::vector<std::string>{"HP:5", "P:1,1,1", "P:1,1,2", "P:1,2,5"});
    REQUIRE(rep.strata.size() == 9);
    auto dim_of = [&](const std::string& s, BranchCase c) {
        for (const Stratum& st : rep.strata)
            if (st.surface.str() == s && st.c == c) return st.dim;
        return -1;
    };
    CHECK(dim_of("P:1,1,2", BranchCase::I) == 35);
    CHECK(dim_of("P:1,1,2", BranchCase::IIa) == 34);
    CHECK(dim_of("P:1,1,2", BranchCase::IIb) == 33);
    CHECK(dim_of("P:1,1,2", BranchCase::IIc) == 32);
    CHECK(dim_of("P:1,2,5", BranchCase::I) == 34);
    CHECK(dim_of("P:1,2,5", BranchCase::IIa) == 33);
    CHECK(dim_of("P:1,2,5", BranchCase::IIb) == 32);
    CHECK(dim_of("P:1,2,5", BranchCase::IIc) == 31);
    CHECK(dim_of("HP:5", BranchCase::I) == 35);
    CHECK(rep.exclusions.size() == 5);
    CHECK(!rep.adjacencies.empty());
}
