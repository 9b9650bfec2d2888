#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "isbst/session/session.hpp"

namespace httplib {
class Server;
}

namespace isbst::session {

/// Routes:
///   POST /sessions                      config -> {"session_id", overview}
///   GET  /sessions/{id}/overview
///   POST /sessions/{id}/weights         weights -> 202 {"sequence"}; 409 while busy
///   GET  /sessions/{id}/candidates/{cid} -> {"candidate", "assignments"}
///   POST /sessions/{id}/export/{cid}    -> ExportRecord
///   POST /sessions/{id}/evaluate        {"points", "k"} -> {"candidate", "assignments"}
///   POST /evaluate                      {"points", "k", "seed"?, "session"?}
///   GET  /random-input?seed=&k=         60 uniform points for the manual editor
///   GET  /sessions/{id}/log             SessionLog document
///   POST /replay/null                   SessionLog document -> replay result
void register_routes(httplib::Server& server, SessionManager& sessions);

/// Blocks serving on host:port. Serves `static_dir` at "/" when given.
void serve(SessionManager& sessions, const std::string& host, int port,
           const std::optional<std::filesystem::path>& static_dir = std::nullopt);

}  // namespace isbst::session
