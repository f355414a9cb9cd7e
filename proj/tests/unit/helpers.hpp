#ifndef WALLCROSS_TEST_HELPERS_HPP
#define WALLCROSS_TEST_HELPERS_HPP

#include "wallcross/rational.hpp"

#include <initializer_list>

inline wallcross::QVec qv(std::initializer_list<long long> l)
{
    wallcross::QVec v;
    for (auto x : l) v.push_back(wallcross::Q(x));
    return v;
}

#endif
