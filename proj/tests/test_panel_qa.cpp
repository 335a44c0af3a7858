#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "roadrough/panel_qa.hpp"

using namespace roadrough;

namespace {

const std::vector<double> kTable3Means{3.71, 3.23, 2.98, 2.43, 2.66, 2.43, 3.71, 3.23, 3.43, 4.5, 3.95};
const std::vector<double> kTable3Sds{0.135, 0.094, 0.184, 0.061, 0.146, 0.504, 0.135, 0.094, 0.17, 0.418, 0.218};

/// Ten ratings per rater alternating about the mean, reproducing each mean and sample SD.
std::vector<RatingRecord> table3_ratings() {
    std::vector<RatingRecord> out;
    const double scale = std::sqrt(9.0 / 10.0);
    for (std::size_t r = 0; r < kTable3Means.size(); ++r) {
        for (int i = 0; i < 10; ++i) {
            const double v = kTable3Means[r] + (i % 2 ? 1.0 : -1.0) * kTable3Sds[r] * scale;
            out.emplace_back("r" + std::to_string(r + 1), "S" + std::to_string(i % 5 + 1), "1", v);
        }
    }
    return out;
}

std::vector<RatingRecord> ratings_for(const std::vector<std::vector<double>>& per_rater) {
    std::vector<RatingRecord> out;
    for (std::size_t r = 0; r < per_rater.size(); ++r) {
        for (std::size_t i = 0; i < per_rater[r].size(); ++i) {
            out.emplace_back("r" + std::to_string(r + 1), "S" + std::to_string(i + 1), "1", per_rater[r][i]);
        }
    }
    return out;
}

std::vector<std::vector<double>> random_groups(std::mt19937_64& rng, std::size_t k, std::size_t max_n) {
    std::uniform_int_distribution<std::size_t> size(2, max_n);
    std::normal_distribution<double> n(3.0, 1.5);
    std::vector<std::vector<double>> groups(k);
    for (auto& g : groups) {
        g.resize(size(rng));
        for (auto& v : g) v = n(rng);
    }
    return groups;
}

}  // namespace

TEST_SUITE("panel-qa") {

TEST_CASE("boxplot on tight data has no outliers") {
    std::vector<double> v{1, 2, 3, 4, 5};
    CHECK(boxplot_outliers(v).empty());
    auto f = boxplot_fences(v);
    CHECK(f.q1 == 2.0);
    CHECK(f.q3 == 4.0);
}

TEST_CASE("boxplot flags 100 in 1,2,3,4,100") {
    std::vector<double> v{1, 2, 3, 4, 100};
    auto f = boxplot_fences(v);
    CHECK(f.q1 == 2.0);
    CHECK(f.q3 == 4.0);
    CHECK(f.upper == 7.0);
    CHECK(boxplot_outliers(v) == std::vector<std::size_t>{4});
    std::vector<double> none;
    CHECK_THROWS_AS(boxplot_outliers(none), InvalidInput);
}

TEST_CASE("boxplot outliers are invariant under positive affine maps") {
    std::mt19937_64 rng(41);
    std::cauchy_distribution<double> heavy;
    std::uniform_real_distribution<double> a(0.1, 10.0), b(-50.0, 50.0);
    for (int k = 0; k < 500; ++k) {
        std::vector<double> v(5 + k % 30);
        for (auto& x : v) x = heavy(rng);
        const double scale = a(rng), shift = b(rng);
        std::vector<double> t;
        for (double x : v) t.push_back(scale * x + shift);
        CHECK(boxplot_outliers(v) == boxplot_outliers(t));
    }
    std::vector<double> v{1, 2, 3, 4, 100}, t;
    for (double x : v) t.push_back(2 * x + 7);
    CHECK(boxplot_outliers(t) == std::vector<std::size_t>{4});
}

TEST_CASE("published rater means reproduce the deviation and rank columns") {
    auto table = delta_r_table(table3_ratings());
    CHECK(std::abs(table.grand_mean - 3.30) <= 0.01);
    const std::vector<double> printed{0.41, -0.07, -0.32, -0.87, -0.64, -0.87, 0.41, -0.07, 0.13, 1.2, 0.65};
    const std::vector<int> ranks{5, 8, 6, 2, 4, 2, 5, 8, 7, 1, 3};
    REQUIRE(table.rows.size() == 11);
    for (std::size_t i = 0; i < 11; ++i) {
        CHECK(std::abs(table.rows[i].delta_r - printed[i]) <= 0.01);
        CHECK(table.rows[i].rank == ranks[i]);
        CHECK(table.rows[i].flag == BiasFlag::None);
        CHECK(std::abs(*table.rows[i].sd - kTable3Sds[i]) <= 1e-12);
    }
    CHECK(std::abs(table.between_rater_sd - 0.652) <= 0.001);
}

TEST_CASE("identical raters have zero deviation") {
    auto table = delta_r_table(ratings_for({{3, 4, 2}, {3, 4, 2}, {3, 4, 2}}));
    for (const auto& row : table.rows) {
        CHECK(row.delta_r == 0.0);
        CHECK(row.rank == 1);
        CHECK(row.flag == BiasFlag::None);
    }
}

TEST_CASE("deviations sum to zero and ranks are dense") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    std::uniform_int_distribution<int> quarter(0, 20);
    for (int k = 0; k < 300; ++k) {
        std::vector<std::vector<double>> per_rater(2 + k % 12);
        for (auto& r : per_rater) {
            r.resize(1 + k % 6);
            for (auto& v : r) v = k % 2 ? quarter(rng) * 0.25 : u(rng);
        }
        auto table = delta_r_table(ratings_for(per_rater));
        double sum = 0.0, max_abs = 0.0;
        for (const auto& row : table.rows) {
            sum += row.delta_r;
            max_abs = std::max(max_abs, std::abs(row.delta_r));
        }
        CHECK(std::abs(sum) <= 1e-9 * 5.0);
        std::vector<int> seen;
        for (const auto& a : table.rows) {
            CHECK((a.rank == 1) == (std::abs(std::abs(a.delta_r) - max_abs) <= 1e-9 * std::max(1.0, max_abs)));
            seen.push_back(a.rank);
            for (const auto& b : table.rows) {
                if (std::abs(std::abs(a.delta_r) - std::abs(b.delta_r)) <= 1e-12) CHECK(a.rank == b.rank);
                if (std::abs(a.delta_r) > std::abs(b.delta_r) + 1e-6) CHECK(a.rank < b.rank);
            }
        }
        std::sort(seen.begin(), seen.end());
        seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
        CHECK(seen.front() == 1);
        CHECK(seen.back() == static_cast<int>(seen.size()));
    }
}

TEST_CASE("a strongly biased rater is flagged") {
    std::vector<std::vector<double>> per_rater(11, {3.0, 2.0, 4.0, 3.5, 2.5});
    for (auto& v : per_rater[6]) v -= 1.0;
    auto table = delta_r_table(ratings_for(per_rater));
    CHECK(table.rows[6].flag == BiasFlag::Severity);
    CHECK(table.rows[6].rank == 1);
    for (std::size_t i = 0; i < 11; ++i) {
        if (i != 6) CHECK(table.rows[i].flag == BiasFlag::None);
    }
}

TEST_CASE("single-rating rater keeps a row but warns") {
    auto table = delta_r_table(ratings_for({{3.0}, {2.0, 4.0}}));
    CHECK_FALSE(table.rows[0].sd);
    CHECK(table.warnings.size() == 1);
    CHECK_THROWS_AS(delta_r_table(ratings_for({{3.0, 4.0}})), InvalidInput);
}

TEST_CASE("rating ranges") {
    auto table = rating_ranges(ratings_for({{1.0, 3.25}, {2.0, 2.81}, {3.0, 3.0, 3.0}, {4.0}}));
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0].range == doctest::Approx(2.25));
    CHECK(table.rows[1].range == doctest::Approx(0.81));
    CHECK(table.rows[2].range == 0.0);
    CHECK(table.rows[2].central_tendency);
    CHECK_FALSE(table.rows[0].central_tendency);
    CHECK(table.warnings.size() == 1);
}

TEST_CASE("one-way identical groups give F = 0") {
    auto res = anova_one_way({{1, 2, 3}, {1, 2, 3}});
    CHECK_FALSE(res.degenerate);
    CHECK(res.row("between").ss == 0.0);
    CHECK(*res.row("between").f == 0.0);
    CHECK(*res.row("between").p == 1.0);
}

TEST_CASE("one-way hand fixture [1,2] vs [4,5]") {
    auto res = anova_one_way({{1, 2}, {4, 5}});
    const auto& b = res.row("between");
    const auto& w = res.row("within");
    CHECK(std::abs(b.ss - 9.0) <= 1e-9);
    CHECK(std::abs(w.ss - 1.0) <= 1e-9);
    CHECK(b.df == 1);
    CHECK(w.df == 2);
    CHECK(std::abs(*b.f - 18.0) <= 1e-9);
    const double numeric = oracle::f_upper_tail_numeric(18.0, 1, 2);
    CHECK(std::abs(*b.p - numeric) <= 1e-6);
    CHECK(std::abs(*b.p - (1.0 - std::sqrt(0.9))) <= 1e-12);
    CHECK_FALSE(b.significant(0.05));
    CHECK(std::abs(res.ss_total - 10.0) <= 1e-12);
    CHECK(res.df_total == 3);
}

TEST_CASE("F tail agrees with numerical integration") {
    for (double d1 : {1.0, 2.0, 4.0, 10.0}) {
        for (double d2 : {2.0, 5.0, 16.0, 40.0}) {
            for (double f : {0.05, 0.5, 1.0, 2.5, 7.0, 30.0}) {
                CHECK(std::abs(f_upper_tail(f, d1, d2) - oracle::f_upper_tail_numeric(f, d1, d2)) <= 1e-8);
            }
        }
    }
    CHECK(f_upper_tail(0.0, 3, 4) == 1.0);
    CHECK_THROWS_AS(f_upper_tail(1.0, 0, 4), InvalidInput);
}

TEST_CASE("one-way degenerate and invalid inputs") {
    CHECK(anova_one_way({{2, 2}, {2, 2}}).degenerate);
    auto inf = anova_one_way({{1, 1}, {2, 2}});
    CHECK(std::isinf(*inf.row("between").f));
    CHECK(*inf.row("between").p == 0.0);
    CHECK_THROWS_AS(anova_one_way({{1, 2}}), InvalidInput);
    CHECK_THROWS_AS(anova_one_way({{1, 2}, {}}), InvalidInput);
    CHECK_THROWS_AS(anova_one_way({{1}, {2}}), InvalidInput);
}

TEST_CASE("one-way additivity and oracle agreement on random instances") {
    std::mt19937_64 rng(51);
    for (int k = 0; k < 1000; ++k) {
        auto groups = random_groups(rng, 2 + k % 5, 8);
        auto res = anova_one_way(groups);
        const auto& b = res.row("between");
        const auto& w = res.row("within");
        CHECK(std::abs(b.ss + w.ss - res.ss_total) <= 1e-9 * std::max(1.0, res.ss_total));
        CHECK(b.df + w.df == res.df_total);
        auto ref = oracle::one_way(groups);
        CHECK(b.ss == doctest::Approx(ref.ss_between).epsilon(1e-7));
        CHECK(*b.f == doctest::Approx(ref.f).epsilon(1e-7));
    }
}

TEST_CASE("two-group F equals squared pooled t") {
    std::mt19937_64 rng(52);
    for (int k = 0; k < 1000; ++k) {
        auto groups = random_groups(rng, 2, 12);
        const double t = oracle::pooled_t(groups[0], groups[1]);
        const double f = *anova_one_way(groups).row("between").f;
        CHECK(std::abs(f - t * t) <= 1e-8 * std::max(1.0, f));
    }
}

TEST_CASE("two-way with identical columns has no column effect") {
    auto res = anova_two_way_no_replication({{1, 1, 1}, {3, 3, 3}, {2, 2, 2}});
    CHECK(res.row("columns").ss == 0.0);
    CHECK(*res.row("columns").f == 0.0);
}

TEST_CASE("two-way 2x2 hand fixture") {
    auto res = anova_two_way_no_replication({{1, 2}, {3, 5}});
    CHECK(res.ss_total == doctest::Approx(8.75).epsilon(1e-12));
    CHECK(res.row("rows").ss == doctest::Approx(6.25).epsilon(1e-12));
    CHECK(res.row("columns").ss == doctest::Approx(2.25).epsilon(1e-12));
    CHECK(res.row("residual").ss == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(res.row("rows").ss + res.row("columns").ss + res.row("residual").ss ==
          doctest::Approx(res.ss_total).epsilon(1e-12));
    CHECK(*res.row("rows").f == doctest::Approx(25.0).epsilon(1e-12));
    CHECK(*res.row("columns").f == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(res.df_total == 3);
}

TEST_CASE("two-way detects an injected run effect") {
    std::mt19937_64 rng(53);
    std::normal_distribution<double> noise(0.0, 0.02);
    std::vector<std::vector<double>> table(5, std::vector<double>(5));
    for (int s = 0; s < 5; ++s) {
        for (int r = 0; r < 5; ++r) table[s][r] = 0.3 + 0.2 * s + 0.1 * r + noise(rng);
    }
    auto res = anova_two_way_no_replication(table);
    const auto& cols = res.row("columns");
    CHECK(cols.significant(0.05));
    CHECK(*cols.p < 1e-6);
}

TEST_CASE("two-way additivity on random tables") {
    std::mt19937_64 rng(54);
    std::normal_distribution<double> n(1.0, 0.5);
    for (int k = 0; k < 500; ++k) {
        std::vector<std::vector<double>> table(2 + k % 5, std::vector<double>(2 + k % 4));
        for (auto& row : table)
            for (auto& v : row) v = n(rng);
        auto res = anova_two_way_no_replication(table);
        const double sum = res.row("rows").ss + res.row("columns").ss + res.row("residual").ss;
        CHECK(std::abs(sum - res.ss_total) <= 1e-9 * std::max(1.0, res.ss_total));
        CHECK(res.row("rows").df + res.row("columns").df + res.row("residual").df == res.df_total);
    }
}

TEST_CASE("two-way rejects ragged tables") {
    CHECK_THROWS_AS(anova_two_way_no_replication({{1, 2}, {3}}), InvalidInput);
    CHECK_THROWS_AS(anova_two_way_no_replication({{1, 2}}), InvalidInput);
    CHECK_THROWS_AS(anova_two_way_no_replication({{1}, {2}}), InvalidInput);
}

TEST_CASE("repeatability CV spot checks") {
    CHECK(std::abs(*cv_percent(0.051, 0.91) - 5.6) <= 0.1);
    CHECK(std::abs(*cv_percent(0.051, 0.60) - 8.5) <= 0.1);
    CHECK(std::abs(*cv_percent(0.091, 1.15) - 7.9) <= 0.05);
    CHECK_FALSE(cv_percent(0.1, 0.0));
    std::vector<double> same{0.7, 0.7, 0.7};
    auto r = repeatability(same);
    CHECK(r.sd == 0.0);
    CHECK(*r.cv_percent == 0.0);
    std::vector<double> zero_mean{-1.0, 1.0};
    CHECK_FALSE(repeatability(zero_mean).cv_percent);
    std::vector<double> one{1.0};
    CHECK_THROWS_AS(repeatability(one), InvalidInput);
}

TEST_CASE("CV is scale invariant") {
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> u(0.5, 2.0), c(0.01, 100.0);
    for (int k = 0; k < 500; ++k) {
        std::vector<double> v(2 + k % 8), scaled;
        for (auto& x : v) x = u(rng);
        const double factor = c(rng);
        for (double x : v) scaled.push_back(factor * x);
        CHECK(*repeatability(scaled).cv_percent == doctest::Approx(*repeatability(v).cv_percent).epsilon(1e-9));
    }
}

}  // TEST_SUITE
