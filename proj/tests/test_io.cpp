#include "corpus.hpp"

#include <gabor_walnut/io.hpp>

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace gw;

namespace {

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST(SignalText, ExactRoundTrip) {
    std::mt19937_64 rng(71);
    const Signal f = random_signal(Grid(40, 5), rng);
    std::stringstream ss;
    io::write_signal(ss, f);
    EXPECT_EQ(read_signal(ss, f.grid()).samples(), f.samples());
}

TEST(SignalText, LengthMismatchIsRejected) {
    std::stringstream ss;
    io::write_signal(ss, Signal(Grid(8, 4)));
    EXPECT_THROW(read_signal(ss, Grid(16, 4)), Error);
}

TEST(Csv, FrameBounds) {
    FrameBounds fb;
    fb.A = 2.0;
    fb.B = 2.0;
    std::ostringstream os;
    io::write_csv(os, fb);
    EXPECT_EQ(lines(os.str()), (std::vector<std::string>{"A,B,method,not_a_frame,iterations", "2,2,dense,0,0"}));
}

TEST(Csv, WalnutCoefficients) {
    const auto inst = corpus::chi_instance();
    std::ostringstream os;
    io::write_csv(os, walnut_coefficients(inst.g, inst.lat));
    const auto l = lines(os.str());
    ASSERT_EQ(l.size(), 2u + 4u);
    EXPECT_EQ(l[0], "# factor=1 a=2 b=2 M=4 L=8");
    EXPECT_EQ(l[1], "r,x,re,im");
    EXPECT_EQ(l[2], "0,0,2,0");
    EXPECT_EQ(l[4], "1,0,0,0");
}

TEST(Csv, AmalgamProfileAndPeriodicVector) {
    const Grid grid(8, 4);
    std::ostringstream a, p;
    io::write_csv(a, amalgam_profile(delta(grid, 0), 2, Weight::constant()));
    EXPECT_EQ(lines(a.str()).front(), "n,sup,weight,weighted_sup,cumsum");
    EXPECT_EQ(lines(a.str())[1], "0,1,1,1,1");
    EXPECT_EQ(lines(a.str()).size(), 5u);
    io::write_csv(p, PeriodicVector{2, {cplx(1.5, -0.5), cplx(0.0)}});
    EXPECT_EQ(lines(p.str()), (std::vector<std::string>{"index,re,im", "0,1.5,-0.5", "1,0,0"}));
}

TEST(Csv, ReportsCarryHeaders) {
    SolveReport rep{SolveMethod::cg, 2, {0.5, 1e-3}};
    std::ostringstream s, i, c;
    io::write_csv(s, rep);
    EXPECT_EQ(lines(s.str()), (std::vector<std::string>{"# method=cg iterations=2", "iteration,residual", "1,0.5",
                                                        "2,0.001"}));
    io::write_csv(i, IdentityResidual{1e-16, -1, 3});
    EXPECT_EQ(lines(i.str()).front(), "max_abs_error,worst_k,worst_x");
    EXPECT_EQ(lines(i.str())[1], "9.9999999999999998e-17,-1,3");
    io::write_csv(c, ConvestEstimate{1.5, 2.25});
    EXPECT_EQ(lines(c.str()), (std::vector<std::string>{"lhs,rhs", "1.5,2.25"}));
}

TEST(Json, SummabilityReport) {
    const auto inst = corpus::chi_instance();
    const auto rep = dual_summability_report(inst.g, inst.lat, inst.weight);
    const auto j = io::to_json(rep);
    EXPECT_EQ(j.at("lattice"), "L=8,s=4,a=2,b=2");
    EXPECT_EQ(j.at("weight"), inst.weight.describe());
    EXPECT_EQ(j.at("per_r").size(), 2u);
    EXPECT_NEAR(j.at("weighted_sum").get<double>(), 0.5, 1e-12);
    EXPECT_TRUE(j.contains("oracle_deviation"));
    SummabilityReport bare;
    EXPECT_FALSE(io::to_json(bare).contains("oracle_deviation"));
}
