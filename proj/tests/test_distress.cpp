#include <doctest.h>

#include <random>
#include <sstream>

#include "roadrough/distress.hpp"

using namespace roadrough;

namespace {

DistressRecord rec(const std::string& s, DistressType t, Severity sev, double d) { return {s, t, sev, d}; }

std::vector<DistressRecord> random_records(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> type(0, 5), sev(1, 3);
    std::uniform_real_distribution<double> dens(0.0, 20.0);
    std::vector<DistressRecord> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(rec("S1", kAllDistressTypes[type(rng)], static_cast<Severity>(sev(rng)), dens(rng)));
    }
    return out;
}

}  // namespace

TEST_SUITE("distress") {

TEST_CASE("default weights") {
    WeightTable w;
    CHECK(*w.weight(DistressType::LongitudinalCrack) == 2.0);
    CHECK(*w.weight(DistressType::TransverseCrack) == 2.0);
    CHECK(*w.weight(DistressType::AlligatorCrack) == 3.0);
    CHECK(*w.weight(DistressType::Pothole) == 3.0);
    CHECK(*w.weight(DistressType::Patching) == 1.0);
    CHECK(*w.weight(DistressType::Corrugation) == 1.5);
    CHECK(w.weights().size() == 6);
    CHECK_THROWS_AS(w.set(DistressType::Pothole, 0.0), InvalidInput);
}

TEST_CASE("no records gives zero for listed sections") {
    std::vector<std::string> ids{"S1", "S2"};
    auto pdi = compute_pdi({}, {}, ids);
    CHECK(pdi.size() == 2);
    CHECK(pdi.at("S1") == 0.0);
}

TEST_CASE("one high pothole of density 2 gives 18") {
    std::vector<DistressRecord> r{rec("S1", DistressType::Pothole, Severity::High, 2.0)};
    CHECK(compute_pdi(r).at("S1") == 18.0);
}

TEST_CASE("adding low patching of density 4 gives 22") {
    std::vector<DistressRecord> r{rec("S1", DistressType::Pothole, Severity::High, 2.0),
                                  rec("S1", DistressType::Patching, Severity::Low, 4.0)};
    CHECK(compute_pdi(r).at("S1") == 22.0);
}

TEST_CASE("missing weight names the type") {
    WeightTable w(std::map<DistressType, double>{{DistressType::Pothole, 3.0}});
    std::vector<DistressRecord> r{rec("S1", DistressType::Corrugation, Severity::Low, 1.0)};
    try {
        compute_pdi(r, w);
        FAIL("expected InvalidInput");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()).find("corrugation") != std::string::npos);
    }
}

TEST_CASE("PDI is additive over disjoint record sets") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 200; ++k) {
        auto a = random_records(rng, 1 + k % 7);
        auto b = random_records(rng, 1 + k % 5);
        auto both = a;
        both.insert(both.end(), b.begin(), b.end());
        CHECK(compute_pdi(both).at("S1") ==
              doctest::Approx(compute_pdi(a).at("S1") + compute_pdi(b).at("S1")).epsilon(1e-12));
    }
}

TEST_CASE("PDI is non-negative and monotone in density and severity") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> bump(0.0, 5.0);
    for (int k = 0; k < 200; ++k) {
        auto records = random_records(rng, 1 + k % 6);
        const double base = compute_pdi(records).at("S1");
        CHECK(base >= 0.0);
        const std::size_t i = static_cast<std::size_t>(k) % records.size();
        auto denser = records;
        denser[i] = rec("S1", records[i].distress_type(), records[i].severity(), records[i].density() + bump(rng));
        CHECK(compute_pdi(denser).at("S1") >= base);
        auto worse = records;
        worse[i] = rec("S1", records[i].distress_type(), Severity::High, records[i].density());
        CHECK(compute_pdi(worse).at("S1") >= base);
    }
}

TEST_CASE("zero densities give zero") {
    std::vector<DistressRecord> r{rec("S1", DistressType::Pothole, Severity::High, 0.0),
                                  rec("S1", DistressType::AlligatorCrack, Severity::Low, 0.0)};
    CHECK(compute_pdi(r).at("S1") == 0.0);
}

TEST_CASE("pdi csv round trip") {
    std::map<std::string, double> pdi{{"S1", 18.0}, {"S2", 0.0}, {"S3", 22.5}};
    std::stringstream buf;
    write_pdi_csv(buf, pdi);
    CHECK(parse_pdi_csv(buf) == pdi);
}

}  // TEST_SUITE
