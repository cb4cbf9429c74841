#include "emconn/types.hpp"

#include <cstdio>

namespace emconn {

namespace {

std::string join(const double* v, int n)
{
    std::string out = "(";
    char buf[32];
    for (int i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", v[i]);
        out += buf;
        out += i + 1 < n ? ", " : ")";
    }
    return out;
}

}  // namespace

std::string to_string(const Vec3& v)
{
    const double a[3] = {v.x, v.y, v.z};
    return join(a, 3);
}

std::string to_string(const SpacetimePoint& p) { return join(p.x.data(), 4); }

}  // namespace emconn
