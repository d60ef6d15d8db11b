#pragma once

#include "burstlink/error.hpp"

#include <nlohmann/json.hpp>

#include <initializer_list>
#include <string>
#include <string_view>

namespace burstlink::detail {

inline void expect_object(const nlohmann::json& j, std::string_view where) {
    if (!j.is_object())
        throw Error(ErrorCode::input, std::string(where) + ": expected a JSON object");
}

/// Rejects keys not in `allowed`.
inline void check_keys(const nlohmann::json& j, std::string_view where,
                       std::initializer_list<std::string_view> allowed) {
    expect_object(j, where);
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (auto a : allowed) known = known || a == key;
        if (!known)
            throw Error(ErrorCode::input,
                        std::string(where) + ": unknown key '" + key + "'");
    }
}

template <class T>
T get(const nlohmann::json& j, std::string_view where, const char* key) {
    if (!j.contains(key))
        throw Error(ErrorCode::input, std::string(where) + ": missing key '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::input,
                    std::string(where) + "." + key + ": " + e.what());
    }
}

template <class T>
void get_to(const nlohmann::json& j, std::string_view where, const char* key, T& out) {
    if (j.contains(key)) out = get<T>(j, where, key);
}

} // namespace burstlink::detail
