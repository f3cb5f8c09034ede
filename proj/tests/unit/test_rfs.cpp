#include "lrfs/errors.hpp"
#include "lrfs/rfs/densities.hpp"
#include "lrfs/rfs/operations.hpp"
#include "lrfs/rfs/serialization.hpp"
#include "lrfs/rfs/set_integral.hpp"
#include "lrfs/rfs/subsets.hpp"

#include "reference.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace lrfs;
using rfs::Label;
using rfs::LabelSet;

namespace {

gm::PdfPtr scalar_pdf(double m, double v) {
    return gm::make_pdf(gm::GaussianMixture::single(gm::Gaussian(gm::Vector::Constant(1, m), gm::Matrix::Constant(1, 1, v))));
}

gm::PdfPtr state_pdf(double px, double py) {
    gm::Vector m(4);
    m << px, 1.0, py, -1.0;
    return gm::make_pdf(gm::GaussianMixture::single(gm::Gaussian(m, gm::Matrix::Identity(4, 4) * 10.0)));
}

const Label l1{1, 1};
const Label l2{1, 2};
const Label l3{2, 1};

rfs::MdGlmbDensity two_label_density() {
    rfs::MdGlmbDensity d;
    d.add(LabelSet{}, std::log(0.1), {});
    d.add(LabelSet{l1}, std::log(0.3), {scalar_pdf(0, 1)});
    d.add(LabelSet{l2}, std::log(0.2), {scalar_pdf(5, 2)});
    d.add(LabelSet{l1, l2}, std::log(0.4), {scalar_pdf(1, 1), scalar_pdf(4, 1)});
    return d;
}

}  // namespace

TEST(LabelSet, SortsAndRejectsDuplicates) {
    const LabelSet s{l3, l1, l2};
    EXPECT_EQ(s[0], l1);
    EXPECT_EQ(s[2], l3);
    EXPECT_TRUE(s.contains(l2));
    EXPECT_EQ(*s.index_of(l3), 2U);
    EXPECT_FALSE(s.index_of(Label{9, 9}).has_value());
    EXPECT_THROW((LabelSet{l1, l1}), DuplicateLabelError);
    EXPECT_LT(LabelSet{l1}, (LabelSet{l1, l2}));
}

TEST(MdGlmb, CardinalityDistributionAndIntensity) {
    const auto d = two_label_density();
    const auto pmf = rfs::cardinality_distribution(d);
    ASSERT_EQ(pmf.size(), 3U);
    EXPECT_NEAR(pmf[0], 0.1, 1e-12);
    EXPECT_NEAR(pmf[1], 0.5, 1e-12);
    EXPECT_NEAR(pmf[2], 0.4, 1e-12);
    EXPECT_NEAR(rfs::expected_cardinality(pmf), 1.3, 1e-12);

    const auto in1 = rfs::intensity(d, l1);
    EXPECT_NEAR(in1.existence_mass, 0.7, 1e-12);
    EXPECT_NEAR(in1.pdf.mean()(0), (0.3 * 0 + 0.4 * 1) / 0.7, 1e-12);
    EXPECT_EQ(rfs::intensity(d, l3).existence_mass, 0.0);
}

TEST(MdGlmb, AddRejectsDuplicatesAndBadPdfCount) {
    auto d = two_label_density();
    EXPECT_THROW(d.add(LabelSet{l1}, 0.0, {scalar_pdf(0, 1)}), ValidationError);
    EXPECT_THROW(d.add(LabelSet{l3}, 0.0, {}), ValidationError);
}

TEST(MdGlmb, TruncateAndPrune) {
    auto d = two_label_density();
    d.truncate(2);
    ASSERT_EQ(d.size(), 2U);
    EXPECT_TRUE(d.is_normalized());
    EXPECT_TRUE(d.hypotheses().count(LabelSet{l1, l2}));
    EXPECT_TRUE(d.hypotheses().count(LabelSet{l1}));

    auto e = two_label_density();
    e.prune(0.15);
    EXPECT_EQ(e.size(), 3U);
    EXPECT_FALSE(e.hypotheses().count(LabelSet{}));
    EXPECT_TRUE(e.is_normalized());
}

TEST(MdGlmb, MarginalizationSumsHistories) {
    rfs::DeltaGlmbDensity dg;
    dg.components.push_back({LabelSet{l1}, 0, std::log(0.2), {scalar_pdf(0, 1)}});
    dg.components.push_back({LabelSet{l1}, 1, std::log(0.6), {scalar_pdf(2, 1)}});
    dg.components.push_back({LabelSet{}, 0, std::log(0.2), {}});
    const auto m = rfs::marginalize(dg);
    ASSERT_EQ(m.size(), 2U);
    const auto& h = m.hypotheses().at(LabelSet{l1});
    EXPECT_NEAR(std::exp(h.log_weight), 0.8, 1e-12);
    EXPECT_NEAR(h.pdfs[0]->mean()(0), 0.75 * 2.0, 1e-12);
    // Second moment of the mixture 0.25 N(0,1) + 0.75 N(2,1).
    EXPECT_NEAR(h.pdfs[0]->covariance()(0, 0), 1.0 + 0.25 * 0.75 * 4.0, 1e-12);
}

TEST(Lmb, CardinalityIsBernoulliConvolution) {
    rfs::LmbDensity d;
    d.set(l1, 0.5, scalar_pdf(0, 1));
    d.set(l2, 0.2, scalar_pdf(1, 1));
    d.set(l3, 0.9, scalar_pdf(2, 1));
    const auto pmf = rfs::cardinality_distribution(d);
    // Brute force over the 8 realizations.
    const double r[] = {0.5, 0.2, 0.9};
    std::vector<double> expect(4, 0.0);
    for (int mask = 0; mask < 8; ++mask) {
        double p = 1.0;
        int n = 0;
        for (int i = 0; i < 3; ++i) {
            const bool in = (mask >> i) & 1;
            p *= in ? r[i] : 1 - r[i];
            n += in;
        }
        expect[static_cast<std::size_t>(n)] += p;
    }
    ASSERT_EQ(pmf.size(), 4U);
    for (std::size_t n = 0; n < 4; ++n) EXPECT_NEAR(pmf[n], expect[n], 1e-12);
}

TEST(Lmb, RejectsInvalidEntries) {
    rfs::LmbDensity d;
    EXPECT_THROW(d.set(l1, 1.5, scalar_pdf(0, 1)), ValidationError);
    EXPECT_THROW(d.set(l1, 0.5, nullptr), ValidationError);
    d.set(l1, 0.001, scalar_pdf(0, 1));
    d.set(l2, 0.5, scalar_pdf(0, 1));
    EXPECT_EQ(d.prune(0.01), 1U);
    EXPECT_FALSE(d.contains(l1));
}

TEST(Lmb, RoundTripThroughMdGlmb) {
    rfs::LmbDensity d;
    d.set(l1, 0.3, scalar_pdf(0, 1));
    d.set(l2, 0.8, scalar_pdf(3, 2));
    d.set(l3, 0.0, scalar_pdf(6, 1));
    const auto expanded = rfs::lmb_to_mdglmb(d);
    EXPECT_EQ(expanded.size(), 4U);  // the r = 0 entry never appears
    EXPECT_TRUE(expanded.is_normalized());
    EXPECT_NEAR(std::exp(expanded.hypotheses().at(LabelSet{l2}).log_weight), 0.7 * 0.8, 1e-12);
    const auto back = rfs::lmb_from_mdglmb(expanded);
    EXPECT_NEAR(back.at(l1).existence, 0.3, 1e-12);
    EXPECT_NEAR(back.at(l2).existence, 0.8, 1e-12);
    EXPECT_NEAR(back.at(l2).pdf->mean()(0), 3.0, 1e-12);
}

TEST(Lmb, TruncatedExpansionKeepsMostProbable) {
    rfs::LmbDensity d;
    d.set(l1, 0.9, scalar_pdf(0, 1));
    d.set(l2, 0.6, scalar_pdf(3, 2));
    const auto top = rfs::lmb_to_mdglmb(d, 2);
    ASSERT_EQ(top.size(), 2U);
    EXPECT_TRUE(top.hypotheses().count(LabelSet{l1, l2}));
    EXPECT_TRUE(top.hypotheses().count(LabelSet{l1}));
    EXPECT_NEAR(std::exp(top.hypotheses().at(LabelSet{l1, l2}).log_weight), 0.54 / (0.54 + 0.36), 1e-12);
}

TEST(BernoulliSubsets, MatchesSortedEnumeration) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> r(6);
        for (auto& x : r) x = u(rng);
        std::vector<double> all;
        for (int mask = 0; mask < 64; ++mask) {
            double lw = 0.0;
            for (int i = 0; i < 6; ++i) lw += std::log(((mask >> i) & 1) ? r[static_cast<std::size_t>(i)] : 1 - r[static_cast<std::size_t>(i)]);
            all.push_back(lw);
        }
        std::sort(all.rbegin(), all.rend());
        const auto best = rfs::k_best_bernoulli_subsets(r, 20);
        ASSERT_EQ(best.size(), 20U);
        for (std::size_t k = 0; k < 20; ++k) EXPECT_NEAR(best[k].log_weight, all[k], 1e-12);
    }
}

TEST(BernoulliSubsets, CertainEntriesNeverFlip) {
    const std::vector<double> r = {1.0, 0.0, 0.5};
    const auto all = rfs::k_best_bernoulli_subsets(r, 10);
    ASSERT_EQ(all.size(), 2U);
    for (const auto& s : all) {
        EXPECT_TRUE(s.included[0]);
        EXPECT_FALSE(s.included[1]);
    }
}

TEST(SetIntegral, NormalizedDensitiesIntegrateToOne) {
    const rfs::Grid1D grid{-25.0, 25.0, 401};
    const auto d = two_label_density();
    EXPECT_NEAR(rfs::set_integral_oracle(rfs::evaluator(d), d.label_space(), grid), 1.0, 1e-6);

    rfs::LmbDensity lmb;
    lmb.set(l1, 0.3, scalar_pdf(0, 1));
    lmb.set(l2, 0.7, scalar_pdf(2, 3));
    EXPECT_NEAR(rfs::set_integral_oracle(rfs::evaluator(lmb), lmb.labels(), grid), 1.0, 1e-6);
}

TEST(SetIntegral, LabeledIntegralOfProduct) {
    const rfs::Grid1D grid{-20.0, 20.0, 801};
    const rfs::DensityEvaluator f = [](std::span<const rfs::LabeledScalar> X) {
        double p = 1.0;
        for (const auto& x : X) p *= ref::normal_pdf(x.x, 1.0, 2.0);
        return p;
    };
    EXPECT_NEAR(rfs::labeled_integral(f, LabelSet{l1, l2}, grid), 1.0, 1e-6);
    EXPECT_NEAR(rfs::labeled_integral(f, LabelSet{}, grid), 1.0, 0.0);
}

TEST(Serialization, MdGlmbRoundTrip) {
    rfs::MdGlmbDensity d;
    d.add(LabelSet{}, std::log(0.25), {});
    d.add(LabelSet{l1, l3}, std::log(0.75), {state_pdf(1, 2), state_pdf(3, 4)});
    const auto back = rfs::mdglmb_from_json(rfs::to_json(d));
    ASSERT_EQ(back.size(), 2U);
    const auto& h = back.hypotheses().at(LabelSet{l1, l3});
    EXPECT_DOUBLE_EQ(h.log_weight, std::log(0.75));
    EXPECT_EQ(h.pdfs[1]->mean(), d.hypotheses().at(LabelSet{l1, l3}).pdfs[1]->mean());
    EXPECT_EQ(h.pdfs[1]->covariance(), d.hypotheses().at(LabelSet{l1, l3}).pdfs[1]->covariance());
}

TEST(Serialization, LmbRoundTripAndMalformedInput) {
    rfs::LmbDensity d;
    d.set(l2, 0.4, state_pdf(5, 6));
    const auto back = rfs::lmb_from_json(rfs::to_json(d));
    EXPECT_DOUBLE_EQ(back.at(l2).existence, 0.4);
    EXPECT_EQ(back.at(l2).pdf->mean(), d.at(l2).pdf->mean());
    EXPECT_THROW((void)rfs::lmb_from_json(nlohmann::json{{"kind", "mdglmb"}}), ValidationError);
    EXPECT_THROW((void)rfs::mixture_from_json(nlohmann::json::parse(R"({"log_weights":[0],"means":[[1,2]],"covariances":[[1]]})")),
                 ValidationError);
}

TEST(Serialization, NominalExchangeBytes) {
    rfs::LmbDensity lmb;
    lmb.set(l1, 0.4, state_pdf(0, 0));
    lmb.set(l2, 0.4, state_pdf(0, 0));
    lmb.set(l3, 0.4, state_pdf(0, 0));
    EXPECT_EQ(rfs::nominal_exchange_bytes(lmb), 4U * (1 + 14 * 3));

    rfs::MdGlmbDensity d;
    d.add(LabelSet{}, std::log(0.5), {});
    d.add(LabelSet{l1, l2}, std::log(0.5), {state_pdf(0, 0), state_pdf(1, 1)});
    EXPECT_EQ(rfs::nominal_exchange_bytes(d), 4U * ((1 + 0) + (1 + 28)));
    EXPECT_EQ(rfs::serialized_bytes(d), rfs::to_json(d).dump().size());
}
