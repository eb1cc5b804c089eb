#include "classica/service.hpp"

#include <httplib.h>

#include "classica/text.hpp"

namespace classica {

struct AnnotationService::Impl {
  const AnnotationPipeline& pipeline;
  httplib::Server server;

  Impl(const AnnotationPipeline& p, size_t max_body) : pipeline(p) {
    server.set_payload_max_length(max_body);

    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("ok", "text/plain; charset=utf-8");
    });

    server.Post("/tag", [this](const httplib::Request& req, httplib::Response& res) {
      if (req.body.empty()) {
        res.status = 400;
        res.set_content("empty body\n", "text/plain; charset=utf-8");
        return;
      }
      if (!valid_utf8(req.body)) {
        res.status = 400;
        res.set_content("body is not valid UTF-8\n", "text/plain; charset=utf-8");
        return;
      }
      Corpus corpus = pipeline.annotate_text(req.body);
      res.set_content(corpus_to_string(corpus),
                      "text/tab-separated-values; charset=utf-8");
    });
  }
};

AnnotationService::AnnotationService(const AnnotationPipeline& pipeline,
                                     size_t max_body_bytes)
    : impl_(std::make_unique<Impl>(pipeline, max_body_bytes)) {}

AnnotationService::~AnnotationService() = default;

bool AnnotationService::listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

int AnnotationService::bind_any(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool AnnotationService::listen_after_bind() {
  return impl_->server.listen_after_bind();
}

void AnnotationService::stop() { impl_->server.stop(); }

}  // namespace classica
