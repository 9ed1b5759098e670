import pytest
from django.contrib.auth.models import User
from rest_framework import status

from supvar import services
from supvar.models import Certificate

pytestmark = pytest.mark.django_db


class TestRunEndpoints:
    """Test the run endpoints and their status mapping."""

    def test_unauthenticated_requests_rejected(self, api_client):
        """Test that run endpoints require authentication."""
        endpoints = [
            '/api/hom/classify/',
            '/api/cohomology/dims/',
            '/api/cohomology/restrict/',
            '/api/support/compare/',
        ]

        for endpoint in endpoints:
            response = api_client.post(endpoint, {}, format='json')
            assert response.status_code == status.HTTP_401_UNAUTHORIZED

    def test_hom_classify(self, authenticated_client):
        """Test classification stores a certificate for the caller."""
        response = authenticated_client.post(
            '/api/hom/classify/', {'family': 'Mr1', 'p': 3, 'enumerate': True}, format='json')

        assert response.status_code == status.HTTP_200_OK
        assert response.data['status'] == 'pass'
        assert response.data['result']['count'] == 9

        certificate = Certificate.objects.get()
        assert certificate.user == authenticated_client.user
        assert certificate.command == 'hom'
        assert certificate.exit_code == 0

    def test_invalid_prime(self, authenticated_client):
        """Test that a non-prime characteristic is rejected as invalid input."""
        response = authenticated_client.post(
            '/api/hom/classify/', {'p': 9}, format='json')

        assert response.status_code == status.HTTP_400_BAD_REQUEST
        assert response.data['status'] == 'invalid'
        assert response.data['exit_code'] == 3

    def test_restrict_class(self, authenticated_client):
        """Test restriction of w along a homomorphism into M(1;2)."""
        response = authenticated_client.post('/api/cohomology/restrict/', {
            'family': 'Mrs',
            's': 2,
            'params': '1,1,1',
            'cohomology_class': 'w',
        }, format='json')

        assert response.status_code == status.HTTP_200_OK
        assert response.data['result']['restriction'] == {'w': 1, 'x1': 1}

    def test_restrict_rejects_wrong_arity(self, authenticated_client):
        """Test that parameters must match the family."""
        response = authenticated_client.post('/api/cohomology/restrict/', {
            'family': 'Mr1',
            'params': [1, 1, 1, 1],
        }, format='json')

        assert response.status_code == status.HTTP_400_BAD_REQUEST

    def test_budget_maps_to_413(self, authenticated_client):
        """Test that an exhausted cobar budget is reported, not failed."""
        response = authenticated_client.post('/api/cohomology/dims/', {
            'family': 'Mr1',
            'n_max': 3,
            'method': 'cobar',
            'cobar_budget': 1,
        }, format='json')

        assert response.status_code == status.HTTP_413_REQUEST_ENTITY_TOO_LARGE
        assert response.data['status'] == 'budget'
        assert response.data['error']['error'] == 'BudgetExceeded'

    def test_support_compare(self, authenticated_client):
        """Test the comparison for the trivial module of G_a(1)."""
        response = authenticated_client.post('/api/support/compare/', {
            'family': 'Gar',
            'module': 'battery:trivial',
        }, format='json')

        assert response.status_code == status.HTTP_200_OK
        assert response.data['result']['status'] == 'pass'

    def test_support_rejects_higher_height(self, authenticated_client):
        """Test that supports need a height-one family."""
        response = authenticated_client.post('/api/support/compare/', {
            'family': 'Gar',
            'r': 2,
        }, format='json')

        assert response.status_code == status.HTTP_400_BAD_REQUEST


class TestCertificates:
    """Test the certificate endpoints."""

    def test_list_only_own_certificates(self, authenticated_client):
        """Test users only see their own certificates."""
        other = User.objects.create_user('otheruser', 'other@test.com', 'pass123')
        services.run('field', 'info', {'p': 5}, user=other, save=True)
        services.run('field', 'info', {'p': 3}, user=authenticated_client.user, save=True)

        response = authenticated_client.get('/api/certificates/')

        assert response.status_code == status.HTTP_200_OK
        assert response.data['count'] == 1
        assert response.data['results'][0]['username'] == 'testuser'

    def test_filter_by_status(self, authenticated_client):
        """Test filtering certificates by status."""
        user = authenticated_client.user
        services.run('field', 'info', {'p': 3}, user=user, save=True)
        services.run('field', 'info', {'p': 4}, user=user, save=True)

        response = authenticated_client.get('/api/certificates/?status=invalid')

        assert response.data['count'] == 1
        assert response.data['results'][0]['exit_code'] == 3

    def test_summary(self, authenticated_client):
        """Test per-command counts."""
        user = authenticated_client.user
        services.run('field', 'info', {'p': 3}, user=user, save=True)
        services.run('hom', 'classify', {'family': 'Gar'}, user=user, save=True)
        services.run('field', 'info', {'p': 4}, user=user, save=True)

        response = authenticated_client.get('/api/certificates/summary/')

        assert response.status_code == status.HTTP_200_OK
        assert response.data['total'] == 3
        assert response.data['by_command'] == {
            'field': {'pass': 1, 'invalid': 1},
            'hom': {'pass': 1},
        }


class TestHealth:
    """Test the public endpoints."""

    def test_health_check(self, api_client):
        """Test the health check reports the kernel defaults."""
        response = api_client.get('/api/health/')

        assert response.status_code == status.HTTP_200_OK
        assert response.data['status'] == 'healthy'
        assert 'DEGREE_CAP' in response.data['kernel']
