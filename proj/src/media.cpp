#include "skeptic/media.hpp"

#include "skeptic/errors.hpp"

#include <opencv2/imgcodecs.hpp>
#include <opencv2/videoio.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>

namespace skeptic {

namespace {

std::string lower_extension(const std::string& path) {
    std::string ext = std::filesystem::path(path).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

std::string sniff_image_type(const std::string& bytes, const std::string& ext) {
    if (bytes.starts_with("\x89PNG")) return "image/png";
    if (bytes.size() >= 3 && static_cast<unsigned char>(bytes[0]) == 0xff &&
        static_cast<unsigned char>(bytes[1]) == 0xd8)
        return "image/jpeg";
    if (bytes.starts_with("GIF8")) return "image/gif";
    if (bytes.size() >= 12 && bytes.substr(0, 4) == "RIFF" && bytes.substr(8, 4) == "WEBP")
        return "image/webp";
    if (bytes.starts_with("BM")) return "image/bmp";
    if (ext == ".png") return "image/png";
    if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
    if (ext == ".gif") return "image/gif";
    if (ext == ".webp") return "image/webp";
    if (ext == ".bmp") return "image/bmp";
    return "";
}

}  // namespace

std::string to_string(MediaKind kind) {
    return kind == MediaKind::Video ? "video" : "image";
}

std::vector<long> sample_frame_indices(long frame_total, int frame_count) {
    if (frame_count < 1) throw MediaError("frame count must be >= 1");
    if (frame_total < 1) throw MediaError("the video has no frames");
    std::vector<long> indices;
    if (frame_total <= frame_count) {
        for (long i = 0; i < frame_total; ++i) indices.push_back(i);
        return indices;
    }
    if (frame_count == 1) return {0};
    for (int i = 0; i < frame_count; ++i)
        indices.push_back(static_cast<long>(i) * (frame_total - 1) / (frame_count - 1));
    return indices;
}

MediaInput load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw MediaError("cannot read media file: " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.empty()) throw MediaError("media file is empty: " + path);
    std::string media_type = sniff_image_type(bytes, lower_extension(path));
    if (media_type.empty()) throw MediaError("unrecognized image format: " + path);
    MediaInput media;
    media.kind = MediaKind::Image;
    media.source = path;
    media.frames.push_back({std::move(media_type), std::move(bytes)});
    return media;
}

MediaInput sample_frames(const std::string& video_source, int frame_count) {
    if (frame_count < 1) throw MediaError("frame count must be >= 1");
    cv::VideoCapture capture(video_source);
    if (!capture.isOpened()) throw MediaError("cannot open video: " + video_source);
    long total = static_cast<long>(capture.get(cv::CAP_PROP_FRAME_COUNT));
    if (total <= 0) {
        // Unreliable container metadata: count by decoding, then reopen.
        cv::Mat frame;
        total = 0;
        while (capture.read(frame)) ++total;
        capture.release();
        capture.open(video_source);
        if (!capture.isOpened()) throw MediaError("cannot reopen video: " + video_source);
    }
    if (total <= 0) throw MediaError("video has no decodable frames: " + video_source);

    std::vector<long> wanted = sample_frame_indices(total, frame_count);
    MediaInput media;
    media.kind = MediaKind::Video;
    media.source = video_source;
    const std::vector<int> jpeg_params{cv::IMWRITE_JPEG_QUALITY, 90};
    std::size_t next = 0;
    cv::Mat frame;
    for (long index = 0; next < wanted.size() && capture.read(frame); ++index) {
        if (index != wanted[next]) continue;
        std::vector<unsigned char> buffer;
        if (!cv::imencode(".jpg", frame, buffer, jpeg_params))
            throw MediaError("cannot encode frame " + std::to_string(index) + " of " +
                             video_source);
        media.frames.push_back(
            {"image/jpeg", std::string(buffer.begin(), buffer.end())});
        ++next;
    }
    if (media.frames.empty())
        throw MediaError("no frames could be decoded from " + video_source);
    return media;
}

bool looks_like_video(const std::string& path) {
    static const char* exts[] = {".mp4", ".avi", ".mov", ".mkv", ".webm",
                                 ".m4v", ".mpg", ".mpeg", ".wmv"};
    std::string ext = lower_extension(path);
    return std::any_of(std::begin(exts), std::end(exts),
                       [&ext](const char* e) { return ext == e; });
}

MediaInput load_media(const std::string& path, int frame_count) {
    if (looks_like_video(path)) return sample_frames(path, frame_count);
    return load_image(path);
}

}  // namespace skeptic
