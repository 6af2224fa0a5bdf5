#include <doctest.h>

#include <sstream>

#include "ppm/dataset.hpp"
#include "ppm/error.hpp"

using namespace ppm;

TEST_CASE("csv round-trip is bit exact") {
    Dataset d = make_dataset({0.0, 0.1, 1.0 / 3.0}, {0.2, -1e-17, 5e300});
    d.x_se = {0.0, 0.01, 0.06};
    d.y_se = {0.05, 0.05, 0.05};
    std::ostringstream os;
    write_dataset_csv(d, os);
    CHECK(os.str().rfind("x,y,x_se,y_se\n", 0) == 0);
    std::istringstream is(os.str());
    const Dataset back = read_dataset_csv(is);
    CHECK(back.x == d.x);
    CHECK(back.y == d.y);
    CHECK(back.x_se == d.x_se);
    CHECK(back.y_se == d.y_se);
}

TEST_CASE("multi-feature csv") {
    Dataset d;
    d.n_features = 2;
    d.x = {1, 2, 3, 4};
    d.y = {0, 1};
    std::ostringstream os;
    write_dataset_csv(d, os);
    CHECK(os.str() == "x1,x2,y\n1,2,0\n3,4,1\n");
    std::istringstream is(os.str());
    const Dataset back = read_dataset_csv(is);
    CHECK(back.n_features == 2);
    CHECK(back.x == d.x);
    CHECK(back.y == d.y);
}

TEST_CASE("only y_se column is accepted") {
    std::istringstream is("x,y,y_se\n0.5,1,0.1\n");
    const Dataset d = read_dataset_csv(is);
    CHECK(d.x_se.empty());
    CHECK(d.y_se == std::vector<double>{0.1});
}

TEST_CASE("malformed csv is rejected") {
    for (const char* text : {"", "x,y\n1\n", "x,y\n1,abc\n", "a,b\n1,2\n", "x,y,x_se\n1,2,-0.1\n"}) {
        std::istringstream is(text);
        INFO(text);
        CHECK_THROWS_AS(read_dataset_csv(is), DomainError);
    }
}

TEST_CASE("validate catches ragged columns") {
    Dataset d = make_dataset({1, 2}, {1, 2});
    d.x_se = {0.1};
    CHECK_THROWS_AS(d.validate(), DomainError);
}
