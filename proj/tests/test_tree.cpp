#include <gtest/gtest.h>

#include "harmtree/tree.hpp"

using namespace harmtree;

namespace {

template <class F>
ErrorKind error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::invalid_config;
}

}  // namespace

TEST(Tree, DegreeMustBeAtLeastTwo) {
  EXPECT_EQ(error_of([] { TreeConfig(1); }), ErrorKind::invalid_config);
  EXPECT_EQ(TreeConfig(2).degree(), 2);
}

TEST(Tree, LevelSizes) {
  EXPECT_EQ(level_size(TreeConfig(3), 0), 1);
  EXPECT_EQ(level_size(TreeConfig(3), 2), 6);
  EXPECT_EQ(level_size(TreeConfig(2), 7), 2);
  for (int d = 2; d <= 6; ++d) {
    const TreeConfig cfg(d);
    EXPECT_EQ(level_size(cfg, 1), d);
    for (int k = 2; k <= 30; ++k) EXPECT_EQ(level_size(cfg, k), (d - 1) * level_size(cfg, k - 1));
  }
  EXPECT_EQ(level_size(TreeConfig(3), 201), Integer(3) << 200);
  EXPECT_EQ(error_of([] { level_size_checked(TreeConfig(3), 200); }), ErrorKind::invalid_config);
}

TEST(Tree, Parent) {
  EXPECT_EQ(parent(VertexAddress{1, 0}), (VertexAddress{1}));
  EXPECT_EQ(parent(VertexAddress{2}), VertexAddress{});
  EXPECT_EQ(parent(VertexAddress{0, 1, 1}), (VertexAddress{0, 1}));
  EXPECT_EQ(error_of([] { parent(VertexAddress{}); }), ErrorKind::root_has_no_parent);
}

TEST(Tree, Children) {
  const TreeConfig d3(3);
  EXPECT_EQ(children(d3, VertexAddress{}), (std::vector<VertexAddress>{{0}, {1}, {2}}));
  EXPECT_EQ(children(d3, VertexAddress{0}), (std::vector<VertexAddress>{{0, 0}, {0, 1}}));
  EXPECT_EQ(children(TreeConfig(2), VertexAddress{0, 0}), (std::vector<VertexAddress>{{0, 0, 0}}));
}

TEST(Tree, ChildrenPointBackToParent) {
  for (int d = 2; d <= 5; ++d) {
    const TreeConfig cfg(d);
    for (int k = 0; k <= 4; ++k) {
      const std::size_t n = level_size_checked(cfg, k);
      for (std::size_t i = 0; i < n; ++i) {
        const VertexAddress a = address_of(cfg, k, i);
        for (const auto& c : children(cfg, a)) EXPECT_EQ(parent(c), a);
      }
    }
  }
}

TEST(Tree, EdgeLevels) {
  const TreeConfig d3(3);
  EXPECT_EQ(edge_level(d3, VertexAddress{1}), 0);
  EXPECT_EQ(edge_level(d3, VertexAddress{1, 0}), 1);
  EXPECT_EQ(edge_level(d3, VertexAddress{0, 1, 1}), 2);
  EXPECT_EQ(error_of([&] { edge_level(d3, VertexAddress{}); }), ErrorKind::no_edge_at_root);
}

TEST(Tree, EdgesBetweenLevelsCountLevelSize) {
  for (int d = 2; d <= 5; ++d) {
    const TreeConfig cfg(d);
    for (int l = 0; l <= 4; ++l) {
      std::size_t edges = 0;
      for (std::size_t i = 0; i < level_size_checked(cfg, l); ++i) {
        for (const auto& c : children(cfg, address_of(cfg, l, i))) {
          EXPECT_EQ(edge_level(cfg, c), l);
          ++edges;
        }
      }
      EXPECT_EQ(Integer(edges), level_size(cfg, l + 1));
    }
  }
}

TEST(Tree, AddressValidityAndIndexRoundTrip) {
  const TreeConfig d3(3);
  EXPECT_TRUE(is_valid(d3, VertexAddress{2, 1}));
  EXPECT_FALSE(is_valid(d3, VertexAddress{3}));
  EXPECT_FALSE(is_valid(d3, VertexAddress{0, 2}));
  EXPECT_EQ(error_of([&] { index_of(d3, VertexAddress{0, 2}); }), ErrorKind::invalid_address);
  for (int k = 0; k <= 5; ++k) {
    for (std::size_t i = 0; i < level_size_checked(d3, k); ++i) EXPECT_EQ(index_of(d3, address_of(d3, k, i)), i);
  }
  EXPECT_EQ(address_of(d3, 2, 3), (VertexAddress{1, 1}));
  EXPECT_EQ(to_string(VertexAddress{0, 1}), "[0,1]");
}
