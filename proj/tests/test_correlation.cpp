#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "roadrough/correlation.hpp"
#include "roadrough/csv.hpp"

using namespace roadrough;

namespace {

std::vector<RmsCsvRow> rms_rows(const std::vector<double>& per_section, int runs = 1) {
    std::vector<RmsCsvRow> out;
    for (std::size_t s = 0; s < per_section.size(); ++s) {
        for (int r = 1; r <= runs; ++r) {
            const double v = per_section[s] + 0.01 * (r - 1);
            out.push_back({"S" + std::to_string(s + 1), "run" + std::to_string(r), v, estimate_iri(v)});
        }
    }
    return out;
}

}  // namespace

TEST_SUITE("correlation") {

TEST_CASE("perfect line") {
    std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
    auto fit = ols_fit(x, y);
    CHECK(fit.slope() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(fit.intercept() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(*fit.r2() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fit.n() == 4);
}

TEST_CASE("(0,0),(1,1),(2,0) is flat with r2 = 0") {
    std::vector<double> x{0, 1, 2}, y{0, 1, 0};
    auto fit = ols_fit(x, y);
    CHECK(std::abs(fit.slope()) <= 1e-15);
    CHECK(fit.intercept() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(*fit.r2()) <= 1e-15);
}

TEST_CASE("anti-correlated line") {
    std::vector<double> x{0, 1, 2, 3, 4}, y{0, -1, -2, -3, -4};
    CHECK(*ols_fit(x, y).pearson_r() == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("degenerate inputs") {
    std::vector<double> x{2, 2, 2}, y{1, 2, 3};
    try {
        ols_fit(x, y);
        FAIL("expected InvalidInput");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()) == "degenerate x");
    }
    std::vector<double> x2{1, 2, 3}, flat{4, 4, 4};
    auto fit = ols_fit(x2, flat);
    CHECK(fit.slope() == 0.0);
    CHECK(fit.intercept() == 4.0);
    CHECK_FALSE(fit.r2());
    CHECK_FALSE(fit.pearson_r());
    std::vector<double> one{1};
    CHECK_THROWS_AS(ols_fit(one, one), InvalidInput);
    CHECK_THROWS_AS(ols_fit(x2, one), InvalidInput);
}

TEST_CASE("regression identities on random data") {
    std::mt19937_64 rng(61);
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int k = 0; k < 1000; ++k) {
        const std::size_t size = 3 + static_cast<std::size_t>(k % 30);
        const double slope = u(rng), intercept = u(rng), noise = std::abs(u(rng));
        std::vector<double> x(size), y(size);
        for (std::size_t i = 0; i < size; ++i) {
            x[i] = u(rng);
            y[i] = slope * x[i] + intercept + noise * n(rng);
        }
        auto fit = ols_fit(x, y);
        CHECK(std::abs(*fit.r2() - *fit.pearson_r() * *fit.pearson_r()) <= 1e-9);
        double resid = 0.0, resid_x = 0.0, scale = 0.0, scale_x = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            const double e = y[i] - fit.predict(x[i]);
            resid += e;
            resid_x += e * x[i];
            scale += std::abs(y[i]);
            scale_x += std::abs(y[i] * x[i]);
        }
        CHECK(std::abs(resid) <= 1e-9 * std::max(1.0, scale));
        CHECK(std::abs(resid_x) <= 1e-9 * std::max(1.0, scale_x));
        auto ref = oracle::ols(x, y);
        CHECK(fit.slope() == doctest::Approx(ref.slope).epsilon(1e-8).scale(1.0));
        CHECK(*fit.r2() == doctest::Approx(ref.r2).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("scaling y scales the coefficients and keeps r2") {
    std::mt19937_64 rng(62);
    std::uniform_real_distribution<double> u(-3.0, 3.0), c(0.1, 20.0);
    for (int k = 0; k < 300; ++k) {
        std::vector<double> x(8), y(8), cy;
        for (std::size_t i = 0; i < 8; ++i) {
            x[i] = u(rng);
            y[i] = u(rng);
        }
        const double factor = c(rng);
        for (double v : y) cy.push_back(factor * v);
        auto a = ols_fit(x, y), b = ols_fit(x, cy);
        CHECK(b.slope() == doctest::Approx(factor * a.slope()).epsilon(1e-9).scale(1.0));
        CHECK(b.intercept() == doctest::Approx(factor * a.intercept()).epsilon(1e-9).scale(1.0));
        CHECK(*b.r2() == doctest::Approx(*a.r2()).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("IRI model refit") {
    std::vector<std::pair<double, double>> pairs;
    for (double rms : {0.2, 0.45, 0.7, 0.95, 1.3}) pairs.emplace_back(rms, 4.19 * rms + 1.73);
    auto model = fit_iri_model(pairs);
    CHECK(std::abs(model.slope() - 4.19) <= 1e-9);
    CHECK(std::abs(model.intercept() - 1.73) <= 1e-9);

    std::vector<std::pair<double, double>> same{{0.5, 3.0}, {0.5, 3.2}, {0.5, 3.1}};
    CHECK_THROWS_WITH_AS(fit_iri_model(same), "degenerate x", InvalidInput);
    std::vector<std::pair<double, double>> falling{{0.1, 5.0}, {0.5, 4.0}, {0.9, 3.0}};
    try {
        fit_iri_model(falling);
        FAIL("expected InvalidInput");
    } catch (const InvalidInput& e) {
        CHECK(std::string(e.what()).find("non-physical slope") != std::string::npos);
    }
    std::vector<std::pair<double, double>> two{{0.1, 2.0}, {0.5, 4.0}};
    CHECK_THROWS_AS(fit_iri_model(two), InvalidInput);
}

TEST_CASE("RQI falling with RMS gives a negative slope") {
    CorrelationInputs in;
    in.rms = rms_rows({0.3, 0.5, 0.7, 0.9, 1.1}, 3);
    std::vector<RatingRecord> ratings;
    const std::vector<double> rqi{4.2, 3.7, 3.1, 2.6, 2.0};
    for (int s = 0; s < 5; ++s) {
        for (int r = 1; r <= 4; ++r) {
            ratings.emplace_back("r" + std::to_string(r), "S" + std::to_string(s + 1), "run1", rqi[s] + 0.05 * (r - 2));
        }
    }
    in.ratings = ratings;
    auto report = correlate_indices(in);
    REQUIRE(report.rms_rqi);
    CHECK(report.rms_rqi->fit.slope() < 0.0);
    CHECK(report.rms_rqi->points.size() == 5);
    CHECK_FALSE(report.rms_iri);
    CHECK_FALSE(report.rms_pdi);
}

TEST_CASE("IRI as an exact linear function of RMS gives r2 = 1") {
    CorrelationInputs in;
    in.rms = rms_rows({0.3, 0.5, 0.7, 0.9, 1.1}, 2);
    std::map<std::string, double> iri;
    for (const auto& [id, rms] : mean_rms_by_section(in.rms)) iri[id] = 4.19 * rms + 1.73;
    in.iri = iri;
    auto report = correlate_indices(in);
    REQUIRE(report.rms_iri);
    CHECK(*report.rms_iri->fit.r2() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.rms_iri->fit.slope() == doctest::Approx(4.19).epsilon(1e-9));
}

TEST_CASE("independent PDI has r2 near zero on average") {
    std::mt19937_64 rng(63);
    std::uniform_real_distribution<double> rms(0.2, 1.4), pdi(0.0, 100.0);
    double total = 0.0;
    const int trials = 200;
    for (int k = 0; k < trials; ++k) {
        std::vector<double> per_section(30);
        for (auto& v : per_section) v = rms(rng);
        CorrelationInputs in;
        in.rms = rms_rows(per_section);
        std::map<std::string, double> p;
        for (std::size_t s = 0; s < per_section.size(); ++s) p["S" + std::to_string(s + 1)] = pdi(rng);
        in.pdi = p;
        total += *correlate_indices(in).rms_pdi->fit.r2();
    }
    CHECK(total / trials < 0.08);
}

TEST_CASE("fewer than three common sections is an error") {
    CorrelationInputs in;
    in.rms = rms_rows({0.3, 0.5, 0.7});
    in.pdi = std::map<std::string, double>{{"S1", 3.0}, {"S2", 4.0}, {"S9", 1.0}};
    CHECK_THROWS_AS(correlate_indices(in), InvalidInput);
}

TEST_CASE("per-run aggregation keeps every section-run") {
    CorrelationInputs in;
    in.rms = rms_rows({0.3, 0.5, 0.7, 0.9}, 3);
    in.per_run = true;
    in.pdi = std::map<std::string, double>{{"S1", 3.0}, {"S2", 4.0}, {"S3", 8.0}, {"S4", 9.0}};
    auto report = correlate_indices(in);
    CHECK(report.rms_pdi->points.size() == 12);
    CHECK(report.rms_pdi->points.front().label == "S1/run1");
}

TEST_CASE("iri csv averages repeats") {
    std::istringstream in("section_id,iri_mm_per_m\nS1,3.0\nS1,4.0\nS2,5\n");
    auto iri = parse_iri_csv(in);
    CHECK(iri.at("S1") == 3.5);
    CHECK(iri.at("S2") == 5.0);
    std::stringstream buf;
    write_iri_csv(buf, iri);
    CHECK(parse_iri_csv(buf) == iri);
    std::istringstream bad("section_id,iri_mm_per_m\nS1,-2\n");
    CHECK_THROWS_AS(parse_iri_csv(bad), ParseError);
}

}  // TEST_SUITE
