#pragma once

#include <fstream>

#include <nlohmann/json.hpp>

/* frozen values from tests/oracle/gen_oracle.py */
inline nlohmann::json const & oracle()
{
    static nlohmann::json const data = [] {
        std::ifstream in(ORACLE_JSON);
        return nlohmann::json::parse(in);
    }();
    return data;
}
