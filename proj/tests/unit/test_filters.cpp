#include "lrfs/errors.hpp"
#include "lrfs/filters/assignment.hpp"
#include "lrfs/filters/estimates.hpp"
#include "lrfs/filters/lmb_filter.hpp"
#include "lrfs/filters/mdglmb_filter.hpp"
#include "lrfs/filters/track_ops.hpp"
#include "lrfs/rfs/operations.hpp"

#include "reference.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace lrfs;
using rfs::Label;
using rfs::LabelSet;

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

gm::Vector state(double px, double vx, double py, double vy) {
    gm::Vector x(4);
    x << px, vx, py, vy;
    return x;
}

gm::PdfPtr track_pdf(double px, double py, double var = 100.0) {
    return gm::make_pdf(gm::GaussianMixture::single(gm::Gaussian(state(px, 0, py, 0), gm::Matrix::Identity(4, 4) * var)));
}

filters::BirthModel one_birth(double r, double px, double py) {
    gm::Vector d(4);
    d << 1e6, 1e4, 1e6, 1e4;
    filters::BirthModel b;
    b.entries.push_back({1, r, gm::make_pdf(gm::GaussianMixture::single(gm::Gaussian(state(px, 0, py, 0), d.asDiagonal())))});
    return b;
}

filters::FilterConfig small_config() {
    filters::FilterConfig cfg;
    cfg.max_hypotheses = 100;
    cfg.assignments_per_hypothesis = 20;
    cfg.hypothesis_prune = 1e-12;
    cfg.execution = Execution::Serial;
    return cfg;
}

sensors::SensorModel linear_sensor(double pd, double clutter) {
    return sensors::SensorModel::position_x(10.0, clutter, pd, {-1000.0, 1000.0});
}

}  // namespace

TEST(Motion, NearlyConstantVelocity) {
    const auto m = filters::MotionModel::ncv(5.0, 5.0, 0.99);
    EXPECT_DOUBLE_EQ(m.F(0, 1), 5.0);
    EXPECT_DOUBLE_EQ(m.F(2, 3), 5.0);
    EXPECT_DOUBLE_EQ(m.Q(0, 0), 25.0 * 625.0 / 4.0);
    EXPECT_DOUBLE_EQ(m.Q(0, 1), 25.0 * 125.0 / 2.0);
    EXPECT_DOUBLE_EQ(m.Q(1, 1), 25.0 * 25.0);
    EXPECT_EQ(m.Q(0, 2), 0.0);
    const auto g = m.predict(gm::Gaussian(state(0, 10, 0, -2), gm::Matrix::Identity(4, 4)));
    EXPECT_DOUBLE_EQ(g.mean(0), 50.0);
    EXPECT_DOUBLE_EQ(g.mean(2), -10.0);
    auto bad = m;
    bad.survival_prob = 1.2;
    EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(Config, RejectsInvalidValues) {
    auto cfg = small_config();
    cfg.gate = 0.0;
    EXPECT_THROW(cfg.validate(), ValidationError);
    cfg = small_config();
    cfg.max_hypotheses = 0;
    EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(Predict, BirthOnlyFromEmptyPrior) {
    const auto motion = filters::MotionModel::ncv(5, 5, 0.99);
    const auto pred = filters::mdglmb_predict(rfs::MdGlmbDensity::no_objects(), motion, one_birth(0.09, 0, 0), 1,
                                              small_config());
    ASSERT_EQ(pred.size(), 2U);
    EXPECT_NEAR(std::exp(pred.hypotheses().at(LabelSet{}).log_weight), 0.91, 1e-12);
    EXPECT_NEAR(std::exp(pred.hypotheses().at(LabelSet{Label{1, 1}}).log_weight), 0.09, 1e-12);
}

TEST(Predict, SurvivorAndBirthProducts) {
    const auto motion = filters::MotionModel::ncv(5, 5, 0.9);
    rfs::MdGlmbDensity post;
    post.add(LabelSet{Label{1, 1}}, 0.0, {track_pdf(0, 0)});
    const auto pred = filters::mdglmb_predict(post, motion, one_birth(0.2, 100, 100), 2, small_config());
    ASSERT_EQ(pred.size(), 4U);
    const auto w = [&](LabelSet s) { return std::exp(pred.hypotheses().at(s).log_weight); };
    EXPECT_NEAR(w(LabelSet{}), 0.1 * 0.8, 1e-12);
    EXPECT_NEAR(w(LabelSet{Label{1, 1}}), 0.9 * 0.8, 1e-12);
    EXPECT_NEAR(w(LabelSet{Label{2, 1}}), 0.1 * 0.2, 1e-12);
    EXPECT_NEAR(w((LabelSet{Label{1, 1}, Label{2, 1}})), 0.9 * 0.2, 1e-12);
    const auto& pdf = pred.hypotheses().at(LabelSet{Label{1, 1}}).pdfs[0];
    const gm::Gaussian expect = motion.predict(gm::Gaussian(state(0, 0, 0, 0), gm::Matrix::Identity(4, 4) * 100.0));
    EXPECT_LT(((*pdf)[0].gaussian.covariance - expect.covariance).norm(), 1e-9);
}

TEST(Predict, LmbMatchesMdGlmbMarginals) {
    const auto motion = filters::MotionModel::ncv(5, 5, 0.95);
    rfs::LmbDensity post;
    post.set(Label{1, 1}, 0.6, track_pdf(0, 0));
    post.set(Label{1, 2}, 0.3, track_pdf(500, 0));
    const auto lmb = filters::lmb_predict(post, motion, one_birth(0.09, 0, 0), 2, small_config());
    const auto md = filters::mdglmb_predict(rfs::lmb_to_mdglmb(post), motion, one_birth(0.09, 0, 0), 2, small_config());
    const auto back = rfs::lmb_from_mdglmb(md);
    ASSERT_EQ(lmb.size(), 3U);
    for (const auto& [l, b] : lmb.entries()) EXPECT_NEAR(b.existence, back.at(l).existence, 1e-12) << rfs::to_string(l);
    EXPECT_NEAR(lmb.at(Label{1, 1}).existence, 0.6 * 0.95, 1e-12);
    EXPECT_NEAR(lmb.at(Label{2, 1}).existence, 0.09, 1e-12);
}

TEST(Psi, MatchesClosedFormKalman) {
    const auto sensor = linear_sensor(0.8, 4.0);
    const auto cfg = small_config();
    const auto pdf = track_pdf(10, 0, 400.0);
    const std::vector<double> Z = {25.0, 400.0, 2000.0};
    const auto row = filters::compute_psi_row(pdf, Label{1, 1}, Z, sensor, cfg);
    ASSERT_EQ(row.log_psi.size(), 4U);
    EXPECT_NEAR(row.log_psi[0], std::log(0.2), 1e-12);

    Eigen::RowVectorXd H = Eigen::RowVectorXd::Zero(4);
    H(0) = 1.0;
    const auto k = ref::kalman_update(state(10, 0, 0, 0), gm::Matrix::Identity(4, 4) * 400.0, H, 100.0, 25.0);
    const double kappa = 4.0 / 2000.0;
    EXPECT_NEAR(row.log_psi[1], std::log(0.8) + k.log_likelihood - std::log(kappa), 1e-8);
    EXPECT_LT((row.pdf[1]->mean() - k.mean).norm(), 1e-8);
    // 390 away with S = 500: outside the default gate.
    EXPECT_EQ(row.log_psi[2], kNegInf);
    EXPECT_EQ(row.pdf[2], nullptr);
    // Outside the measurement space: clutter floor keeps it finite, but the gate rejects it.
    EXPECT_EQ(row.log_psi[3], kNegInf);

    const auto single = filters::psi_bar(pdf, Label{1, 1}, 1, Z, sensor, cfg);
    EXPECT_EQ(single.log_psi, row.log_psi[1]);
}

TEST(Assignment, HungarianFindsMinimum) {
    gm::Matrix c(3, 3);
    c << 4, 1, 3, 2, 0, 5, 3, 2, 2;
    const auto cols = filters::hungarian(c);
    ASSERT_TRUE(cols.has_value());
    EXPECT_EQ(*cols, (std::vector<int>{1, 0, 2}));
    c(0, 1) = std::numeric_limits<double>::infinity();
    c(1, 0) = std::numeric_limits<double>::infinity();
    c(0, 0) = std::numeric_limits<double>::infinity();
    c(1, 1) = std::numeric_limits<double>::infinity();
    c(0, 2) = std::numeric_limits<double>::infinity();
    EXPECT_FALSE(filters::hungarian(c).has_value());
}

TEST(Assignment, RankedMatchesBruteForce) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> n01;
    std::bernoulli_distribution forbid(0.2);
    for (int t = 0; t < 100; ++t) {
        const int rows = 1 + t % 4;
        const int cols = rows + t % 3;
        gm::Matrix s(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) s(i, j) = forbid(rng) ? kNegInf : n01(rng);
        const auto brute = ref::enumerate_assignments(s);
        const auto ranked = filters::ranked_assignments(s, 10);
        ASSERT_EQ(ranked.size(), std::min<std::size_t>(10, brute.size()));
        for (std::size_t k = 0; k < ranked.size(); ++k) {
            EXPECT_NEAR(ranked[k].score, brute[k].score, 1e-12);
            EXPECT_EQ(ranked[k].cols, brute[k].cols);
        }
    }
}

TEST(Assignment, TiesResolvedCanonically) {
    const gm::Matrix s = gm::Matrix::Zero(2, 3);
    const auto r = filters::ranked_assignments(s, 3);
    ASSERT_EQ(r.size(), 3U);
    EXPECT_EQ(r[0].cols, (std::vector<int>{0, 1}));
    EXPECT_EQ(r[1].cols, (std::vector<int>{0, 2}));
    EXPECT_EQ(r[2].cols, (std::vector<int>{1, 0}));
}

TEST(Update, SingleTrackPosteriorWeights) {
    const auto sensor = linear_sensor(0.9, 2.0);
    auto cfg = small_config();
    rfs::MdGlmbDensity pred;
    pred.add(LabelSet{}, std::log(0.5), {});
    pred.add(LabelSet{Label{1, 1}}, std::log(0.5), {track_pdf(0, 0, 400.0)});
    const std::vector<double> Z = {5.0};
    const auto post = filters::mdglmb_update(pred, Z, sensor, cfg);

    Eigen::RowVectorXd H = Eigen::RowVectorXd::Zero(4);
    H(0) = 1.0;
    const auto k = ref::kalman_update(state(0, 0, 0, 0), gm::Matrix::Identity(4, 4) * 400.0, H, 100.0, 5.0);
    const double psi_det = 0.9 * std::exp(k.log_likelihood) / (2.0 / 2000.0);
    const double w_empty = 0.5;
    const double w_track = 0.5 * (0.1 + psi_det);
    EXPECT_NEAR(std::exp(post.hypotheses().at(LabelSet{}).log_weight), w_empty / (w_empty + w_track), 1e-9);
    const auto& pdf = post.hypotheses().at(LabelSet{Label{1, 1}}).pdfs[0];
    const double a = psi_det / (0.1 + psi_det);
    EXPECT_NEAR(pdf->mean()(0), a * k.mean(0), 1e-6);
}

TEST(Update, RankedEqualsExhaustive) {
    const auto sensor = linear_sensor(0.9, 3.0);
    auto cfg = small_config();
    cfg.assignments_per_hypothesis = 1000;
    cfg.proportional_assignments = false;
    cfg.hypothesis_prune = 0.0;
    rfs::MdGlmbDensity pred;
    pred.add(LabelSet{}, std::log(0.2), {});
    pred.add(LabelSet{Label{1, 1}}, std::log(0.3), {track_pdf(0, 0, 400.0)});
    pred.add(LabelSet{Label{1, 1}, Label{1, 2}}, std::log(0.5), {track_pdf(0, 0, 400.0), track_pdf(30, 0, 400.0)});
    const std::vector<double> Z = {4.0, 28.0, -10.0};
    const auto ranked = filters::mdglmb_update(pred, Z, sensor, cfg);
    cfg.exhaustive_assignments = true;
    const auto exhaustive = filters::mdglmb_update(pred, Z, sensor, cfg);
    ASSERT_EQ(ranked.size(), exhaustive.size());
    for (const auto& [labels, h] : exhaustive.hypotheses()) {
        EXPECT_NEAR(ranked.hypotheses().at(labels).log_weight, h.log_weight, 1e-12);
    }
}

TEST(Update, LmbAgreesWithMdGlmbOnSingleTrack) {
    const auto sensor = linear_sensor(0.9, 2.0);
    auto cfg = small_config();
    cfg.existence_prune = 0.0;
    rfs::LmbDensity pred;
    pred.set(Label{1, 1}, 0.5, track_pdf(0, 0, 400.0));
    const std::vector<double> Z = {5.0, -300.0};
    const auto lmb = filters::lmb_update(pred, Z, sensor, cfg);
    const auto md = rfs::lmb_from_mdglmb(filters::mdglmb_update(rfs::lmb_to_mdglmb(pred), Z, sensor, cfg));
    EXPECT_NEAR(lmb.at(Label{1, 1}).existence, md.at(Label{1, 1}).existence, 1e-12);
}

TEST(Extraction, MapCardinalityAndTieBreak) {
    rfs::MdGlmbDensity d;
    d.add(LabelSet{}, std::log(0.2), {});
    d.add(LabelSet{Label{1, 2}}, std::log(0.3), {track_pdf(5, 5)});
    d.add(LabelSet{Label{1, 1}}, std::log(0.3), {track_pdf(1, 1)});
    d.add(LabelSet{Label{1, 1}, Label{1, 2}}, std::log(0.2), {track_pdf(1, 1), track_pdf(5, 5)});
    const auto est = filters::extract_estimates(d);
    ASSERT_EQ(est.size(), 1U);
    EXPECT_EQ(est[0].label, (Label{1, 1}));  // equal weights: smaller label set wins
    EXPECT_DOUBLE_EQ(est[0].state(0), 1.0);

    rfs::LmbDensity lmb;
    lmb.set(Label{2, 1}, 0.6, track_pdf(7, 7));
    lmb.set(Label{1, 1}, 0.6, track_pdf(1, 1));
    lmb.set(Label{1, 2}, 0.1, track_pdf(3, 3));
    const auto le = filters::extract_estimates(lmb);
    ASSERT_EQ(le.size(), 1U);  // pmf: 0.144, 0.528, 0.328
    EXPECT_EQ(le[0].label, (Label{1, 1}));
}

TEST(Extraction, PointEstimateUsesHeaviestComponent) {
    gm::GaussianMixture m;
    m.add(std::log(0.4), gm::Gaussian(state(1, 0, 0, 0), gm::Matrix::Identity(4, 4)));
    m.add(std::log(0.6), gm::Gaussian(state(9, 0, 0, 0), gm::Matrix::Identity(4, 4)));
    EXPECT_DOUBLE_EQ(filters::point_estimate(m)(0), 9.0);
}

TEST(Centralized, SingleSensorEqualsPredictThenUpdate) {
    const auto motion = filters::MotionModel::ncv(5, 5, 0.99);
    const auto birth = one_birth(0.09, 0, 0);
    const auto cfg = small_config();
    const std::vector<sensors::SensorModel> sensors = {linear_sensor(0.9, 2.0)};
    const std::vector<std::vector<double>> scans = {{3.0, 500.0}};
    rfs::MdGlmbDensity post;
    post.add(LabelSet{Label{1, 1}}, 0.0, {track_pdf(0, 0)});
    const auto c = filters::centralized_mdglmb_step(post, motion, birth, 2, sensors, scans, cfg);
    const auto s = filters::mdglmb_update(filters::mdglmb_predict(post, motion, birth, 2, cfg), scans[0], sensors[0], cfg);
    ASSERT_EQ(c.size(), s.size());
    for (const auto& [labels, h] : s.hypotheses()) EXPECT_DOUBLE_EQ(c.hypotheses().at(labels).log_weight, h.log_weight);
}

TEST(Centralized, ScanCountMustMatchSensors) {
    const auto motion = filters::MotionModel::ncv(5, 5, 0.99);
    const std::vector<sensors::SensorModel> sensors = {linear_sensor(0.9, 2.0)};
    EXPECT_THROW((void)filters::centralized_mdglmb_step(rfs::MdGlmbDensity::no_objects(), motion, one_birth(0.09, 0, 0), 1,
                                                        sensors, {}, small_config()),
                 ValidationError);
}

TEST(Tracking, LocksOnToSingleObjectWithoutClutter) {
    const auto motion = filters::MotionModel::ncv(1, 0.1, 0.99);
    const auto birth = one_birth(0.5, 0, 0);
    const auto sensor = sensors::SensorModel::toa(-7000, 0, 10, 0, 0.99, 1e5);  // constrains x
    const auto sensor2 = sensors::SensorModel::doa(7000, 0, 0.002, 0, 0.99);  // constrains y
    const std::vector<sensors::SensorModel> all = {sensor, sensor2};
    auto cfg = small_config();
    rfs::MdGlmbDensity post = rfs::MdGlmbDensity::no_objects();
    std::mt19937_64 rng(5);
    gm::Vector x = state(100, 5, -200, 3);
    for (int k = 1; k <= 20; ++k) {
        if (k > 1) x = motion.F * x;
        const std::vector<sensors::TruthPoint> truth = {{{1, 1}, x}};
        const std::vector<std::vector<double>> scans = {sensors::simulate_measurements(truth, sensor, rng),
                                                        sensors::simulate_measurements(truth, sensor2, rng)};
        post = filters::centralized_mdglmb_step(post, motion, birth, k, all, scans, cfg);
    }
    const auto est = filters::extract_estimates(post);
    ASSERT_EQ(est.size(), 1U);
    EXPECT_LT(std::hypot(est[0].state(0) - x(0), est[0].state(2) - x(2)), 50.0);
}
