#include <gtest/gtest.h>

#include <jostspec/io.hpp>

using namespace jostspec;

TEST(Io, Fnv1aReferenceVectors) {
  EXPECT_EQ(io::hex64(io::fnv1a64("")), "cbf29ce484222325");
  EXPECT_EQ(io::hex64(io::fnv1a64("a")), "af63dc4c8601ec8c");
  EXPECT_EQ(io::hex64(io::fnv1a64("foobar")), "85944171f73967e8");
}

TEST(Io, PotentialDescriptors) {
  auto b = io::load_potential(R"({"kind":"barrier","gamma":2,"R":3})");
  ASSERT_TRUE(b.barrier.has_value());
  EXPECT_DOUBLE_EQ(b.q.l1_norm(), 6.0);
  auto s = io::load_potential(R"({"kind":"step","breakpoints":[0,1,2],"values":[[0,1],2]})");
  EXPECT_NEAR(s.q.l1_norm(), 3.0, 1e-15);
  EXPECT_FALSE(s.barrier.has_value());
  EXPECT_DOUBLE_EQ(io::load_potential(R"({"kind":"zero"})").q.l1_norm(), 0.0);
  EXPECT_NO_THROW(io::load_potential(R"({"kind":"gaussian","c":[0,1],"x0":1,"s":0.5})"));
}

TEST(Io, BadDescriptorsAreDomainErrors) {
  EXPECT_THROW(io::load_potential(R"({"kind":"cubic"})"), DomainError);
  EXPECT_THROW(io::load_potential(R"({"kind":"barrier","gamma":2})"), DomainError);
  EXPECT_THROW(io::load_potential(R"({"kind":"step","breakpoints":[0,1],"values":[]})"), DomainError);
  EXPECT_THROW(io::load_potential("{not json"), DomainError);
  EXPECT_THROW(io::load_potential("/nonexistent/descriptor.json"), DomainError);
}

TEST(Io, SpectrumRoundTrip) {
  std::vector<Eigenvalue> sp{{cplx(1, 0.5), cplx(0.75, 1.0), 2, 1e-14}};
  io::json doc;
  doc["eigenvalues"] = io::json::array({io::to_json(sp[0])});
  doc["unresolved"] = io::json::array();
  auto back = io::parse_spectrum(doc.dump());
  ASSERT_EQ(back.eigenvalues.size(), 1u);
  EXPECT_EQ(back.eigenvalues[0].lambda, sp[0].lambda);
  EXPECT_EQ(back.eigenvalues[0].multiplicity, 2);
  EXPECT_FALSE(back.unresolved);
}

TEST(Io, BarrierStreamKeepsOnlyEigenvalues) {
  FixedPointSolution a, b;
  a.lambda = cplx(1, 0.6);
  a.z = sq_plus(a.lambda);
  a.is_eigenvalue = true;
  b.lambda = cplx(1, -0.1);
  b.is_eigenvalue = false;
  std::string text = io::to_json(a).dump() + "\n" + io::to_json(b).dump() + "\n";
  auto sp = io::parse_spectrum(text);
  ASSERT_EQ(sp.eigenvalues.size(), 1u);
  EXPECT_EQ(sp.eigenvalues[0].lambda, a.lambda);
}
