import logging
import urllib.error
import urllib.parse
import urllib.request
from ..constants import DEFAULT_FETCH_ENDPOINT, DEFAULT_FETCH_TIMEOUT, LOGGER_NAME
from .. import exceptions

logger = logging.getLogger(LOGGER_NAME)


def build_url(accession: str, endpoint: str = DEFAULT_FETCH_ENDPOINT) -> str:
    """
    Build the request URL, `{accession}` in the endpoint is substituted,
    otherwise the accession is appended as a path segment
    """
    quoted = urllib.parse.quote(accession, safe='')
    if '{accession}' in endpoint:
        return endpoint.replace('{accession}', quoted)
    return f"{endpoint.rstrip('/')}/{quoted}"


def fetch_sequence(accession: str, endpoint: str = DEFAULT_FETCH_ENDPOINT,
                   timeout: float = DEFAULT_FETCH_TIMEOUT) -> str:
    """
    Fetch FASTA text for an accession, blocking, no caching and no retry
    """
    if not accession or not accession.strip():
        raise exceptions.ValidationError('accession must not be empty')

    url = build_url(accession.strip(), endpoint)
    logger.info(f'fetch sequence {accession} from {url}')
    try:
        with urllib.request.urlopen(url, timeout=timeout) as response:
            body = response.read().decode('utf-8', errors='replace')
    except urllib.error.HTTPError as exc:
        if exc.code in (400, 404, 410):
            raise exceptions.NotFound(accession) from exc
        raise exceptions.NetworkError(f"HTTP {exc.code} from {url}") from exc
    except (urllib.error.URLError, OSError) as exc:
        raise exceptions.NetworkError(f"cannot reach {url}: {exc}") from exc

    if not body.lstrip().startswith('>'):
        if not body.strip():
            raise exceptions.NotFound(accession)
        raise exceptions.NonFastaResponse(f"response for {accession} is not FASTA")

    logger.debug(f'fetched {len(body)} bytes for {accession}')
    return body
